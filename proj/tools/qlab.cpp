#include <iostream>

#include "harness.hpp"

int main(int argc, char** argv) { return qlab::harness::cli_main(argc, argv, std::cout, std::cerr); }
