#include <iostream>

#include "mhk_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mhk::cli::run(args, std::cout, std::cerr);
}
