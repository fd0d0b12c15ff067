#include "cli.hpp"
#include <iostream>

int main(int argc, char** argv) {
    return ramasum::cli_execute(argc, argv, std::cout, std::cerr);
}
