#include <iostream>

#include "bosonext/commands.hpp"

int main(int argc, char** argv) { return bosonext::run_cli(argc, argv, std::cout, std::cerr); }
