#include <iostream>
#include <vector>

#include "supdiff/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return supdiff::run_cli(args, std::cout, std::cerr);
}
