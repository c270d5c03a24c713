#include "qsconc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return qsc::cli::run(argc, argv, std::cout, std::cerr);
}
