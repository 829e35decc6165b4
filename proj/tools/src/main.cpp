#include <iostream>

#include "contactgeom_cli/commands.hpp"

int main(int argc, char** argv) { return contactgeom::cli::run(argc, argv, std::cout, std::cerr); }
