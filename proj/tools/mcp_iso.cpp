#include <iostream>
#include <string>
#include <vector>

#include "mcpiso/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mcpiso::cli::run(args, std::cout, std::cerr);
}
