#include <iostream>
#include <string>
#include <vector>

#include "flab_cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return flab::cli::run(args, std::cout, std::cerr);
}
