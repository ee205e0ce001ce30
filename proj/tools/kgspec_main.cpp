#include <iostream>

#include "kgspec/cli.hpp"

int main(int argc, char** argv) { return kgspec::cli::run(argc, argv, std::cout, std::cerr); }
