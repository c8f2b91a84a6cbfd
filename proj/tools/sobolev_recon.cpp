#include "sobolev/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sobolev::run_cli(argc, argv, std::cout, std::cerr); }
