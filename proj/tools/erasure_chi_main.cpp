#include <iostream>

#include "erasure_chi/cli.hpp"

int main(int argc, char** argv) { return erasure_chi::cli::run(argc, argv, std::cout, std::cerr); }
