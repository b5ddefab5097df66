#include <iostream>

#include "abc_arma/cli.hpp"

int main(int argc, char** argv) {
    return abc_arma::cli::run(argc, argv, std::cout, std::cerr);
}
