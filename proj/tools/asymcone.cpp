#include "asymcone/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return asymcone::cli::run(argc, argv, std::cout, std::cerr);
}
