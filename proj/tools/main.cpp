#include <iostream>
#include <string>
#include <vector>

#include "gscore/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gscore::cli::run(args, std::cout, std::cerr);
}
