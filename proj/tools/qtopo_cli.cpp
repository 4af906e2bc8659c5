#include "qtopo/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qtopo::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
