#include <iostream>
#include <string>
#include <vector>

#include "grpdef/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return grpdef::cli::dispatch(args, std::cout, std::cerr).exit_code;
}
