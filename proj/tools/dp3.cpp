#include <iostream>

#include "dp3/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dp3::run(args, std::cout, std::cerr);
}
