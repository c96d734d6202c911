#include <iostream>

#include "fracdg/cli.hpp"

int main(int argc, char** argv) { return fracdg::run_cli(argc, argv, std::cout, std::cerr); }
