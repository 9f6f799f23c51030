#include <iostream>

#include "prospan/cli.hpp"

int main(int argc, char** argv) { return prospan::run_cli(argc, argv, std::cout, std::cerr); }
