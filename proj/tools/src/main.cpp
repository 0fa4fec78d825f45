#include <iostream>
#include <string>
#include <vector>

#include "tug_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return tug::cli::run_cli(args, std::cout, std::cerr);
}
