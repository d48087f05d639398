#include <iostream>

#include "padic_lattice/cli.hpp"

int main(int argc, char** argv) { return padic::cli::run_cli(argc, argv, std::cout, std::cerr); }
