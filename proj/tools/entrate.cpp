#include <unistd.h>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "entrate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return entrate::cli::run(args, std::cin, std::cout, std::cerr, ::isatty(::fileno(stdout)) != 0);
}
