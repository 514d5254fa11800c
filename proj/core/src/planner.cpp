#include "pddlkit/planner.hpp"

#include <map>
#include <sstream>

#include "pddlkit/file_io.hpp"
#include "pddlkit/process.hpp"

namespace pddlkit {

namespace fs = std::filesystem;

namespace {

using Snapshot = std::map<fs::path, fs::file_time_type>;

Snapshot snapshot(const fs::path& dir) {
  Snapshot out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (auto it = fs::recursive_directory_iterator(dir, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec)) out[it->path()] = it->last_write_time(ec);
  }
  return out;
}

std::string replace_all(std::string word, std::string_view key,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = word.find(key, pos)) != std::string::npos) {
    word.replace(pos, key.size(), value);
    pos += value.size();
  }
  return word;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void validate_config(const PlannerConfig& config) {
  for (std::string_view key : {"{domain}", "{problem}"}) {
    if (config.command_template.find(key) == std::string::npos) {
      throw PlannerConfigError("planner command lacks the " + std::string(key) +
                               " placeholder: " + config.command_template);
    }
  }
  try {
    if (split_command_line(config.command_template).empty()) {
      throw PlannerConfigError("planner command is empty");
    }
  } catch (const std::invalid_argument& e) {
    throw PlannerConfigError(std::string("planner command: ") + e.what());
  }
  if (config.timeout_seconds && *config.timeout_seconds <= 0) {
    throw PlannerConfigError("timeout_seconds must be positive");
  }
}

std::vector<std::string> planner_argv(const PlannerConfig& config,
                                      const fs::path& domain,
                                      const fs::path& problem) {
  validate_config(config);
  std::vector<std::string> argv = split_command_line(config.command_template);
  for (auto& word : argv) {
    word = replace_all(std::move(word), "{domain}", domain.string());
    word = replace_all(std::move(word), "{problem}", problem.string());
    word = replace_all(std::move(word), "{solution_dir}",
                       config.solution_dir.string());
  }
  return argv;
}

PlanResult run_planner(const PlannerConfig& config, const fs::path& domain,
                       const fs::path& problem) {
  const auto argv = planner_argv(config, domain, problem);
  for (const auto& input : {domain, problem}) {
    if (!fs::is_regular_file(input)) {
      throw fs::filesystem_error("planner input not found", input,
                                 std::make_error_code(std::errc::no_such_file_or_directory));
    }
  }

  ProcessOptions options;
  if (config.timeout_seconds) {
    options.timeout = std::chrono::seconds(*config.timeout_seconds);
  }
  const Snapshot before = snapshot(config.solution_dir);
  ProcessResult run = run_process(argv, options);
  const Snapshot after = snapshot(config.solution_dir);

  PlanResult result;
  result.exit_code = run.exit_code;
  result.stdout_text = std::move(run.out);
  result.stderr_text = std::move(run.err);
  result.elapsed = run.elapsed;
  result.timed_out = run.timed_out;

  std::optional<fs::file_time_type> newest;
  for (const auto& [path, time] : after) {
    auto old = before.find(path);
    if (old != before.end() && old->second == time) continue;
    if (!newest || time > *newest) {
      newest = time;
      result.solution_path = path;
    }
  }
  return result;
}

PlannerConfig parse_planner_config(std::string_view text) {
  PlannerConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw PlannerConfigError("line " + std::to_string(number) +
                               ": expected key = value");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    std::string value = trim(std::string_view(content).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"') {
      const auto close = value.rfind('"');
      if (close == 0) {
        throw PlannerConfigError("line " + std::to_string(number) +
                                 ": unterminated string");
      }
      value = value.substr(1, close - 1);
    } else if (const auto hash = value.find('#'); hash != std::string::npos) {
      value = trim(value.substr(0, hash));
    }

    if (key == "command") {
      config.command_template = value;
    } else if (key == "timeout_seconds") {
      try {
        std::size_t used = 0;
        config.timeout_seconds = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw PlannerConfigError("line " + std::to_string(number) +
                                 ": timeout_seconds is not an integer");
      }
    } else if (key == "solution_dir") {
      config.solution_dir = value;
    } else {
      throw PlannerConfigError("line " + std::to_string(number) +
                               ": unknown key '" + key + "'");
    }
  }
  return config;
}

PlannerConfig load_planner_config(const fs::path& file) {
  PlannerConfig config = parse_planner_config(read_file(file));
  if (config.solution_dir.is_relative()) {
    config.solution_dir = file.parent_path() / config.solution_dir;
  }
  return config;
}

}  // namespace pddlkit
