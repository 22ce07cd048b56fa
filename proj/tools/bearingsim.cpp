#include <iostream>

#include "bearing/cli.hpp"

int main(int argc, char** argv) { return bearing::run_cli(argc, argv, std::cout, std::cerr); }
