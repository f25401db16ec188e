#include <iostream>

#include "latcensus/cli.hpp"

int main(int argc, char** argv) { return latcensus::cli::run(argc, argv, std::cout, std::cerr); }
