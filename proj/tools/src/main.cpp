#include <iostream>

#include "cli.hpp"

int main(int argc, char **argv) {
  return sysmap::cli::run(argc, argv, std::cout, std::cerr);
}
