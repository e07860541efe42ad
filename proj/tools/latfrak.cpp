#include <iostream>

#include "latfrak/cli.hpp"

int main(int argc, char** argv) {
  return latfrak::cli::main_entry(argc, argv, std::cout, std::cerr);
}
