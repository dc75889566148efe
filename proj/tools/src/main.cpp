#include <iostream>

#include "raschkit_cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return raschkit::cli::cli_main(args, std::cout, std::cerr);
}
