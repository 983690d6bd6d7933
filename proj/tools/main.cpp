#include <iostream>
#include <string>
#include <vector>

#include "roep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return roep::cli::run(args, std::cout, std::cerr);
}
