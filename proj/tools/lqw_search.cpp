#include <iostream>

#include "lqw/cli.hpp"

int main(int argc, char** argv) { return lqw::cli_main(argc, argv, std::cout, std::cerr); }
