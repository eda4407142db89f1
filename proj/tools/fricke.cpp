#include "fricke/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fricke::cli::dispatch(argc, argv, std::cout, std::cerr); }
