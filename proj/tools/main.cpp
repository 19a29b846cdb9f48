#include <iostream>

#include "ghm_cli/app.hpp"

int main(int argc, char** argv) {
    return ghm::cli::run(argc, argv, std::cout, std::cerr);
}
