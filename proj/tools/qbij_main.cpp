#include <iostream>

#include "qbij/cli.hpp"

int main(int argc, char** argv) {
  return qbij::run_cli(argc, argv, std::cout, std::cerr);
}
