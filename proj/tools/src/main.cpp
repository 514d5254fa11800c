#include <iostream>

#include "pddlkit_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pddlkit::cli::dispatch(args, std::cout, std::cerr);
}
