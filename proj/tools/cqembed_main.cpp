#include <iostream>

#include "cqembed/cli.hpp"

int main(int argc, char** argv) {
    return cqembed::run_cli(argc, argv, std::cout, std::cerr);
}
