#include <iostream>
#include <string>
#include <vector>

#include "lindgain/cli/runner.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return lindgain::cli::run_cli(args, std::cout, std::cerr);
}
