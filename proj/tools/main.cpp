#include <iostream>
#include <string>
#include <vector>

#include "gaugequad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gaugequad::cli::run(args, std::cout, std::cerr);
}
