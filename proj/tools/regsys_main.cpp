#include <iostream>

#include "regsys/cli.hpp"

int main(int argc, char** argv) {
    return regsys::cli_main(argc, argv, std::cin, std::cout, std::cerr);
}
