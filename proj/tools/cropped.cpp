#include <iostream>

#include "cropped/cli/cli.hpp"

int main(int argc, char** argv) {
  return cropped::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
