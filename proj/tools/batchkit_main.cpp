#include <iostream>
#include <string>
#include <vector>

#include "batchkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return batchkit::cli::main_impl(args, std::cout, std::cerr);
}
