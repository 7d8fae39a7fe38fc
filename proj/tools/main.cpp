#include <iostream>

#include "dqaoa/cli.hpp"

int main(int argc, char** argv) { return dqaoa::run_cli(argc, argv, std::cout, std::cerr); }
