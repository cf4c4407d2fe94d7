#include <iostream>
#include <string>
#include <vector>

#include "lumaswitch/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return lumaswitch::cli::run(args, std::cout, std::cerr);
}
