#include <iostream>

#include "cli_lib.hpp"

int main(int argc, char** argv) {
    return spb::cli::run_main(argc, argv, std::cout, std::cerr);
}
