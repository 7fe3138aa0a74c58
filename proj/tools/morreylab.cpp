#include <iostream>

#include "morreylab/cli.hpp"

int main(int argc, char** argv) { return morreylab::run_cli(argc, argv, std::cout, std::cerr); }
