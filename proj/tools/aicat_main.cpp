#include <iostream>
#include <string>
#include <vector>

#include "aicat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aicat::run_cli(args, std::cout, std::cerr);
}
