#include <iostream>

#include "phc/cli.hpp"

int main(int argc, char** argv) { return phc::run_cli(argc, argv, std::cout, std::cerr); }
