#include <iostream>
#include <string>
#include <vector>

#include "strahler/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return strahler::cli::run(args, std::cout, std::cerr);
}
