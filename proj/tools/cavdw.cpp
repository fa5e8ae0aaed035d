#include "cavdw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cavdw::cli::cli_main(argc, argv, std::cout, std::cerr); }
