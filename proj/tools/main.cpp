#include <iostream>
#include <string>
#include <vector>

#include "plateau/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return plateau::cli::run(args, std::cout, std::cerr);
}
