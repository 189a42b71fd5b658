#include <iostream>
#include <string>
#include <vector>

#include "fc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fc::run_cli(std::move(args), std::cout, std::cerr);
}
