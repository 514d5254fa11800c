#ifndef PDDLKIT_PLANNER_HPP_
#define PDDLKIT_PLANNER_HPP_

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pddlkit {

class PlannerConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `command_template` is split into words like a shell command line and
/// {domain}, {problem}, {solution_dir} are substituted inside each word,
/// so a path containing spaces stays one argument.
struct PlannerConfig {
  std::string command_template;
  std::optional<int> timeout_seconds;
  std::filesystem::path solution_dir = "solutions";
};

struct PlanResult {
  int exit_code = 0;
  std::string stdout_text;
  std::string stderr_text;
  std::chrono::duration<double> elapsed{0.0};
  bool timed_out = false;
  /// Newest file created or modified in the solution dir during the run.
  std::optional<std::filesystem::path> solution_path;
};

/// Throws PlannerConfigError when {domain} or {problem} is missing, the
/// template does not split, or the timeout is not positive.
void validate_config(const PlannerConfig& config);

/// Argument vector after placeholder substitution.
std::vector<std::string> planner_argv(const PlannerConfig& config,
                                      const std::filesystem::path& domain,
                                      const std::filesystem::path& problem);

/// Throws PlannerConfigError, std::filesystem::filesystem_error for a
/// missing input file, or SpawnError when the planner cannot be started.
PlanResult run_planner(const PlannerConfig& config,
                       const std::filesystem::path& domain,
                       const std::filesystem::path& problem);

/// Reads `key = "value"` lines ('#' starts a comment). Keys: command,
/// timeout_seconds, solution_dir. Relative solution_dir is resolved
/// against the file's directory.
PlannerConfig load_planner_config(const std::filesystem::path& file);
PlannerConfig parse_planner_config(std::string_view text);

inline constexpr std::string_view kPlannerConfigFile = "pddlkit.toml";

}  // namespace pddlkit

#endif  // PDDLKIT_PLANNER_HPP_
