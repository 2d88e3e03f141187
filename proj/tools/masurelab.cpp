#include <iostream>

#include "masurelab/cli.hpp"

int main(int argc, char** argv) { return masurelab::cli::run(argc, argv, std::cout, std::cerr); }
