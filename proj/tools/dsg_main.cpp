#include <iostream>
#include <string>
#include <vector>

#include "dsg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dsg::CliMain(args, std::cout, std::cerr);
}
