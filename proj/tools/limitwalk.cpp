#include <iostream>
#include <string>
#include <vector>

#include "limitwalk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return limitwalk::run_cli(args, std::cout, std::cerr);
}
