#include <iostream>

#include "tsnake/cli.hpp"

int main(int argc, char** argv) {
    return tsnake::run_cli(argc, argv, std::cout, std::cerr);
}
