#include <iostream>

#include "clusterlab/cli.hpp"

int main(int argc, char** argv) { return clusterlab::run_cli(argc, argv, std::cout, std::cerr); }
