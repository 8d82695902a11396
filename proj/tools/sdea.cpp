#include <iostream>

#include "sdea/cli.hpp"

int main(int argc, char** argv) {
  return sdea::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
