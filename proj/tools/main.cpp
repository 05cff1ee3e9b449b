#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return exunit::cli::run(argc, argv, std::cout, std::cerr); }
