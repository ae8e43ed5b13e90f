#include <iostream>
#include <string>
#include <vector>

#include "plenoptic/cli/dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return plenoptic::cli::dispatch(args, std::cout, std::cerr);
}
