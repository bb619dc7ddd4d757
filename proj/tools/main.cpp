#include <iostream>

#include "coopmsr/cli.hpp"

int main(int argc, char** argv) {
    return coopmsr::cli::run(argc, argv, std::cout, std::cerr);
}
