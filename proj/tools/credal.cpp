#include <iostream>

#include "credal/cli.hpp"

int main(int argc, char** argv) { return credal::run_cli(argc, argv, std::cout, std::cerr); }
