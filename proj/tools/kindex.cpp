#include <iostream>

#include "kindex/cli.hpp"

int main(int argc, char** argv) { return kindex::cli::run(argc, argv, std::cout, std::cerr); }
