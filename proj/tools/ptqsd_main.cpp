#include <iostream>
#include <string>
#include <vector>

#include "ptqsd/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return ptqsd::cli::run(args, std::cin, std::cout, std::cerr);
}
