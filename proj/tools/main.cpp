#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return frnorm::cli::run(argc, argv, std::cout, std::cerr); }
