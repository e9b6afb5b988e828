#include <iostream>

#include "scbench/cli.hpp"

int main(int argc, char** argv) {
  return scbench::cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
