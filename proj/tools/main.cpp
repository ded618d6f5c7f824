#include <iostream>

#include "bbgroup/cli.hpp"

int main(int argc, char** argv) { return bbg::run_cli(argc, argv, std::cout, std::cerr); }
