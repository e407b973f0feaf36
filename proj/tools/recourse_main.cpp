#include <iostream>
#include <string>
#include <vector>

#include "recourse/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return recourse::cli::run(args, std::cout, std::cerr);
}
