#include <iostream>

#include "hyperlaw/cli.hpp"

int main(int argc, char** argv) { return hyperlaw::run_cli(argc, argv, std::cout, std::cerr); }
