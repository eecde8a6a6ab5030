#include "fcg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fcg::cli::run(argc, argv, std::cout, std::cerr); }
