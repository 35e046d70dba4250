#include <iostream>

#include "ucm_cli/commands.hpp"

int main(int argc, char** argv) { return ucm_cli::run_cli(argc, argv, std::cout, std::cerr); }
