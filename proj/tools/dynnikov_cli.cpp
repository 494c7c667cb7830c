#include <iostream>

#include "dynnikov/cli.hpp"

int main(int argc, char** argv) { return dyn::run_cli(argc, argv, std::cout, std::cerr); }
