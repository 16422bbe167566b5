#include <iostream>

#include "phimetric/cli.hpp"

int main(int argc, char** argv) { return phimetric::run_cli(argc, argv, std::cout, std::cerr); }
