#include "liesde/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return liesde::run_cli(argc, argv, std::cout, std::cerr); }
