#include <iostream>
#include <string>
#include <vector>

#include "solenoid_lab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return solenoid_lab::run(args, std::cout, std::cerr);
}
