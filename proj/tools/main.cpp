#include "qserre/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qserre::run_cli(argc, argv, std::cout, std::cerr); }
