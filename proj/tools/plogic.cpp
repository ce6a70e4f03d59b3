#include <iostream>

#include "plogic/cli.hpp"

int main(int argc, char** argv) { return plogic::cli::run(argc, argv, std::cout, std::cerr); }
