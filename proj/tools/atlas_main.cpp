#include <iostream>

#include "atlas/cli.hpp"

int main(int argc, char** argv) { return atlas::run_cli(argc, argv, std::cout, std::cerr); }
