#include "latsum/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return latsum::run_cli(argc, argv, std::cout, std::cerr);
}
