#ifndef PDDLKIT_PROCESS_HPP_
#define PDDLKIT_PROCESS_HPP_

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pddlkit {

/// The child could not be started at all (exec failed, fork failed).
class SpawnError : public std::runtime_error {
 public:
  SpawnError(const std::string& what, int os_error)
      : std::runtime_error(what), os_error_(os_error) {}
  int os_error() const { return os_error_; }

 private:
  int os_error_;
};

struct ProcessOptions {
  std::optional<std::chrono::milliseconds> timeout;
  std::optional<std::filesystem::path> working_dir;
};

struct ProcessResult {
  int exit_code = 0;
  /// Set when the child died from a signal (including our timeout kill).
  std::optional<int> term_signal;
  bool timed_out = false;
  std::string out;
  std::string err;
  std::chrono::duration<double> elapsed{0.0};
};

/// Runs argv[0] (looked up on PATH) without a shell, capturing stdout and
/// stderr. Throws SpawnError when the program cannot be executed.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& options = {});

/// Splits a command line into words using POSIX shell quoting rules
/// (single quotes, double quotes, backslash). No expansion is performed.
/// Throws std::invalid_argument on an unterminated quote.
std::vector<std::string> split_command_line(std::string_view command);

/// Single-quotes `word` for display or for handing to /bin/sh.
std::string shell_quote(std::string_view word);

/// True when `program` names an executable file, directly or via PATH.
bool find_executable(std::string_view program);

}  // namespace pddlkit

#endif  // PDDLKIT_PROCESS_HPP_
