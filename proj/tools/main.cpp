#include <iostream>

#include "fhenon/cli.hpp"

int main(int argc, char** argv) { return fhenon::cli::run_cli(argc, argv, std::cout, std::cerr); }
