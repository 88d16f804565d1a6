#include <iostream>

#include "smlecam/cli.hpp"

int main(int argc, char** argv) { return smle::cli::run(argc, argv, std::cout, std::cerr); }
