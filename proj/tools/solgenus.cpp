#include <iostream>

#include "solgenus/cli.hpp"

int main(int argc, char** argv) {
  return solgenus::cli::run(argc, argv, std::cout, std::cerr);
}
