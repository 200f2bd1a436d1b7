#include <iostream>

#include "lambertheta/cli.hpp"

int main(int argc, char** argv) { return lambertheta::cli::main_entry(argc, argv, std::cout, std::cerr); }
