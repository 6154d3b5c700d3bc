#include <iostream>

#include "regdiff_cli/commands.hpp"

int main(int argc, char** argv) { return regdiff::cli::run(argc, argv, std::cout, std::cerr); }
