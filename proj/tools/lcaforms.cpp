#include <iostream>

#include "lcaforms/cli.hpp"

int main(int argc, char** argv) { return lcaforms::cli::run(argc, argv, std::cout, std::cerr); }
