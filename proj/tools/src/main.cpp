#include <iostream>

#include "sfair/cli.hpp"

int main(int argc, char** argv) {
    return sfair::cli::run({argv, argv + argc}, std::cout, std::cerr);
}
