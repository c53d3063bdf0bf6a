#include <iostream>
#include <string>
#include <vector>

#include "lbr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lbr::cli_dispatch(args, std::cout, std::cerr);
}
