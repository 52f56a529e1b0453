#include <iostream>
#include <string>
#include <vector>

#include "schemes/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return schemes::run_cli(args, std::cout, std::cerr);
}
