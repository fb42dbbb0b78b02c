#include <iostream>

#include "pt/cli.hpp"

int main(int argc, char** argv)
{
    return pt::cli::run(argc, argv, std::cout, std::cerr);
}
