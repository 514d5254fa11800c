#ifndef PDDLKIT_SCAFFOLD_HPP_
#define PDDLKIT_SCAFFOLD_HPP_

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pddlkit {

inline constexpr std::string_view kNamePlaceholder = "{{name}}";

/// One entry of a project tree. A relative path ending in '/' is a
/// directory and has no content.
struct ProjectTemplate {
  std::string relative_path;
  std::string content;
  bool executable = false;

  bool is_directory() const {
    return !relative_path.empty() && relative_path.back() == '/';
  }
};

class ScaffoldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// domains/, problems/p01.pddl, solutions/, domain.pddl, README.md, plan.
std::vector<ProjectTemplate> default_templates();

/// Every regular file under `dir`, keyed by its path relative to `dir`.
/// Empty sub-directories become directory entries.
std::vector<ProjectTemplate> load_template_dir(const std::filesystem::path& dir);

/// Union of both sets; an override replaces the base entry with the same
/// relative path. Order: base order, then new override paths.
std::vector<ProjectTemplate> merge_templates(
    std::span<const ProjectTemplate> base,
    std::span<const ProjectTemplate> overrides);

/// Throws ScaffoldError naming the first character that makes `name`
/// unusable as a PDDL domain name.
void validate_project_name(std::string_view name);

/// Creates <parent_dir>/<name>/ from `templates` with "{{name}}" replaced.
/// Refuses to touch an existing directory. Returns created paths in
/// template order, the project root first.
std::vector<std::filesystem::path> create_project(
    std::string_view name, const std::filesystem::path& parent_dir,
    std::span<const ProjectTemplate> templates);

}  // namespace pddlkit

#endif  // PDDLKIT_SCAFFOLD_HPP_
