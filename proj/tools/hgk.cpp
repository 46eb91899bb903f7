#include <iostream>

#include "hgk/cli.hpp"

int main(int argc, char** argv) { return hgk::cli::run(argc, argv, std::cout, std::cerr); }
