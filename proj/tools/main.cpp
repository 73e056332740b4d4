#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gtl::cli::main(argc, argv, std::cout, std::cerr); }
