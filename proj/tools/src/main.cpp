#include <iostream>
#include <string>
#include <vector>

#include "aimforge_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aimforge::cli::dispatch(args, std::cout, std::cerr);
}
