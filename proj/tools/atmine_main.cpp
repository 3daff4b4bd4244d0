#include <iostream>

#include "atmine/cli.hpp"

int main(int argc, char** argv) { return atmine::cli::run(argc, argv, std::cout, std::cerr); }
