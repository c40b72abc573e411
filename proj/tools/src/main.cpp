#include <iostream>

#include "musb_cli/cli.hpp"

int main(int argc, char** argv) { return musb::cli::run(argc, argv, std::cout, std::cerr); }
