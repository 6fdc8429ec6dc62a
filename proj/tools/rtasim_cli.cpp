#include <iostream>

#include "rtasim/sweep.hpp"

int main(int argc, char** argv)
{
    return rtasim::cli_main(argc, argv, std::cout, std::cerr);
}
