#include "operlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return operlab::cli::main(argc, argv, std::cout, std::cerr); }
