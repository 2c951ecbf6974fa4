#include <iostream>

#include "tamarkin/cli.hpp"

int main(int argc, char** argv) { return tamarkin::run(argc, argv, std::cin, std::cout, std::cerr); }
