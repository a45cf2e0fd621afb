#include <iostream>

#include "gelsolve_cli/cli.hpp"

int main(int argc, char** argv) { return gelsolve::cli::run_cli(argc, argv, std::cout, std::cerr); }
