#include <iostream>
#include <string>
#include <vector>

#include "polyskel/lab.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return polyskel::lab::run(args, std::cout, std::cerr);
}
