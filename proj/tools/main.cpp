#include <iostream>

#include "folp/cli.hpp"

int main(int argc, char** argv) { return folp::cli::run(argc, argv, std::cout, std::cerr); }
