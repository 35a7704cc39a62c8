#include <iostream>

#include "gibbsgraph/experiment.hpp"

int main(int argc, char** argv) {
    return gibbsgraph::cli_main(argc, argv, std::cout, std::cerr);
}
