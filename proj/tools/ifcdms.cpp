#include <iostream>
#include <string>
#include <vector>

#include "ifcdms/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return ifcdms::run_cli(args, std::cout, std::cerr);
}
