#include <iostream>

#include "yoccoz/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return yoccoz::cli::run(args, std::cin, std::cout, std::cerr);
}
