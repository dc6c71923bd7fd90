#include <iostream>

#include "intstab/cli.hpp"

int main(int argc, char** argv) { return intstab::cli::run(argc, argv, std::cout, std::cerr); }
