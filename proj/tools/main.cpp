#include <iostream>
#include <string>
#include <vector>

#include "jladder/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jladder::run(args, std::cout, std::cerr);
}
