#include <iostream>
#include <string>
#include <vector>

#include "bayescal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bayescal::cli::run(args, std::cout, std::cerr);
}
