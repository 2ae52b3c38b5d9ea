#include <iostream>
#include <string>
#include <vector>

#include "ksf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return ksf::run_cli(args, std::cout, std::cerr);
}
