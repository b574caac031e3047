#include "abelk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return abelk::run_cli(argc, argv, std::cout, std::cerr); }
