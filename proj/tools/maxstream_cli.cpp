#include <iostream>

#include "maxstream/cli.hpp"

int main(int argc, char** argv) { return maxstream::cli::run(argc, argv, std::cout, std::cerr); }
