#include <iostream>

#include "unifexp/cli.hpp"

int main(int argc, char** argv) {
  return unifexp::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
