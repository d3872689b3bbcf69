#include <iostream>

#include "howmany/cli.hpp"

int main(int argc, char** argv) { return howmany::run_cli(argc, argv, std::cout, std::cerr); }
