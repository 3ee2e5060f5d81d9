#include <iostream>
#include <string>
#include <vector>

#include "fairfold/config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto config = fairfold::parse_config(args, std::cout);
        if (!config) return 0;  // --help
        return fairfold::cli_run(*config, std::cout, std::cerr);
    } catch (const fairfold::Error& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    }
}
