#ifndef PDDLKIT_CLI_CLI_HPP_
#define PDDLKIT_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace pddlkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace pddlkit::cli

#endif  // PDDLKIT_CLI_CLI_HPP_
