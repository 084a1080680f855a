#include <iostream>

#include "contlogic/cli/cli.hpp"

int main(int argc, char** argv) { return contlogic::cli::run(argc, argv, std::cout, std::cerr); }
