#include "pddlkit/scaffold.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "pddlkit/file_io.hpp"

namespace pddlkit {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kDomainTemplate = R"((define (domain {{name}})
  (:requirements :strips :typing)

  (:types)

  (:predicates)
)
)";

constexpr std::string_view kProblemTemplate = R"((define (problem {{name}}-p01)
  (:domain {{name}})

  (:objects)

  (:init)

  (:goal (and))
)
)";

constexpr std::string_view kReadmeTemplate = R"(# {{name}}

PDDL project for the `{{name}}` domain.

## Authors

## Contact

## Domain specification

Informal description of `domain.pddl`: types, predicates and actions.

## Problem specifications

One entry per file in `problems/`.

## License
)";

constexpr std::string_view kPlanTemplate = R"sh(#!/bin/sh
# Runs a planner on domain.pddl and problems/p01.pddl of project {{name}}.
# PLANNER is a command template; {domain}, {problem} and {solution_dir} are
# replaced by the corresponding paths. Any planner with a command line works.
PLANNER='ff -o {domain} -f {problem}'

cd "$(dirname "$0")" || exit 1
exec pddlkit plan --command "$PLANNER" "$@"
)sh";

std::string substitute_name(std::string_view text, std::string_view name) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto hit = text.find(kNamePlaceholder, pos);
    out.append(text.substr(pos, hit - pos));
    if (hit == std::string_view::npos) break;
    out.append(name);
    pos = hit + kNamePlaceholder.size();
  }
  return out;
}

void check_relative(std::string_view relative) {
  const fs::path p(relative);
  if (relative.empty() || p.is_absolute()) {
    throw ScaffoldError("template path must be relative: '" +
                        std::string(relative) + "'");
  }
  for (const auto& part : p) {
    if (part == "..") {
      throw ScaffoldError("template path leaves the project: '" +
                          std::string(relative) + "'");
    }
  }
}

}  // namespace

std::vector<ProjectTemplate> default_templates() {
  return {
      {"domains/", "", false},
      {"problems/p01.pddl", std::string(kProblemTemplate), false},
      {"solutions/", "", false},
      {"domain.pddl", std::string(kDomainTemplate), false},
      {"README.md", std::string(kReadmeTemplate), false},
      {"plan", std::string(kPlanTemplate), true},
  };
}

std::vector<ProjectTemplate> load_template_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw ScaffoldError("template directory not found: " + dir.string());
  }
  std::vector<ProjectTemplate> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    const std::string relative =
        fs::relative(entry.path(), dir).generic_string();
    if (entry.is_directory()) {
      if (fs::is_empty(entry.path())) out.push_back({relative + "/", "", false});
      continue;
    }
    if (!entry.is_regular_file()) continue;
    const auto perms = entry.status().permissions();
    const bool exec = (perms & fs::perms::owner_exec) != fs::perms::none;
    out.push_back({relative, read_file(entry.path()), exec});
  }
  std::sort(out.begin(), out.end(),
            [](const ProjectTemplate& a, const ProjectTemplate& b) {
              return a.relative_path < b.relative_path;
            });
  return out;
}

std::vector<ProjectTemplate> merge_templates(
    std::span<const ProjectTemplate> base,
    std::span<const ProjectTemplate> overrides) {
  std::vector<ProjectTemplate> out(base.begin(), base.end());
  for (const auto& o : overrides) {
    auto it = std::find_if(out.begin(), out.end(), [&](const ProjectTemplate& t) {
      return t.relative_path == o.relative_path;
    });
    if (it != out.end()) {
      *it = o;
    } else {
      out.push_back(o);
    }
  }
  return out;
}

void validate_project_name(std::string_view name) {
  if (name.empty()) throw ScaffoldError("project name is empty");
  const auto first = static_cast<unsigned char>(name.front());
  if (first >= 0x80 || !std::isalpha(first)) {
    throw ScaffoldError("project name must start with a letter, not '" +
                        std::string(1, name.front()) + "'");
  }
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || !(std::isalnum(u) || c == '-' || c == '_')) {
      throw ScaffoldError("project name contains invalid character '" +
                          std::string(1, c) + "'");
    }
  }
}

std::vector<fs::path> create_project(std::string_view name,
                                     const fs::path& parent_dir,
                                     std::span<const ProjectTemplate> templates) {
  validate_project_name(name);
  for (const auto& t : templates) check_relative(t.relative_path);

  const fs::path root = parent_dir / std::string(name);
  if (fs::exists(root)) {
    throw ScaffoldError("refusing to overwrite existing path " + root.string());
  }
  fs::create_directories(root);

  std::vector<fs::path> created{root};
  for (const auto& t : templates) {
    const fs::path target = root / t.relative_path;
    if (t.is_directory()) {
      fs::create_directories(target);
      created.push_back(target);
      continue;
    }
    fs::create_directories(target.parent_path());
    {
      std::ofstream out(target, std::ios::binary);
      if (!out) throw ScaffoldError("cannot write " + target.string());
      out << substitute_name(t.content, name);
    }
    if (t.executable) {
      fs::permissions(target,
                      fs::perms::owner_exec | fs::perms::group_exec |
                          fs::perms::others_exec,
                      fs::perm_options::add);
    }
    created.push_back(target);
  }
  return created;
}

}  // namespace pddlkit
