#include <iostream>

#include "bozon/cli.hpp"

int main(int argc, char** argv) { return bozon::run_cli(argc, argv, std::cout, std::cerr); }
