#include <iostream>

#include "absnorm/commands.hpp"

int main(int argc, char** argv) { return absnorm::cli::run(argc, argv, std::cout, std::cerr); }
