#include <iostream>
#include <vector>

#include "subh/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return subh::run_cli(args, std::cout, std::cerr);
}
