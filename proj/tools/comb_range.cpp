#include <iostream>
#include <string>
#include <vector>

#include "comb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return comb::cli::run(args, std::cout, std::cerr);
}
