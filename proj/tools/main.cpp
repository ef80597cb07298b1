#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return spectral_indep::cli::run(argc, argv, std::cout, std::cerr); }
