#include <iostream>

#include "ptlattice/cli.hpp"

int main(int argc, char** argv) { return ptlattice::run(argc, argv, std::cout, std::cerr); }
