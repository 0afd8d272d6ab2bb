#include <iostream>
#include <vector>

#include "convexkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return convexkit::cli::run(args, std::cout, std::cerr);
}
