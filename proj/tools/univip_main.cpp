#include <iostream>
#include <string>
#include <vector>

#include "univip/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return univip::cli::run(args, std::cout, std::cerr);
}
