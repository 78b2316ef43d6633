#include <iostream>
#include <string>
#include <vector>

#include "supervene/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return supervene::cli::run(std::move(args), std::cin, std::cout, std::cerr);
}
