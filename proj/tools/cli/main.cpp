#include <iostream>
#include <string>
#include <vector>

#include "mrct_cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mrct::cli::cli_main(args, std::cout, std::cerr);
}
