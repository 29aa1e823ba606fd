#include <iostream>

#include "concswap/cli.hpp"

int main(int argc, char** argv) { return concswap::run_cli(argc, argv, std::cout, std::cerr); }
