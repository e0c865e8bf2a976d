#include <iostream>

#include "fermatk/cli.hpp"

int main(int argc, char** argv)
{
    return fermatk::run_cli(argc, argv, std::cout, std::cerr);
}
