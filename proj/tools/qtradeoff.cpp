#include <iostream>

#include "qtradeoff/cli.hpp"

int main(int argc, char** argv)
{
    return qtradeoff::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
