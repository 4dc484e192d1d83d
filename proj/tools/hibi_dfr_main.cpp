#include <iostream>
#include <string>
#include <vector>

#include "hibi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hibi::run_command(args, std::cout, std::cerr).status;
}
