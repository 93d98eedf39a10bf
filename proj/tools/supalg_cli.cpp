#include <iostream>

#include "supalg/cli.hpp"

int main(int argc, char** argv) { return supalg::cli::run(argc, argv, std::cout, std::cerr); }
