#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    eg::cli::CliConfig cfg;
    if (auto code = eg::cli::parse_arguments(argc, argv, cfg, std::cout, std::cerr)) return *code;
    return eg::cli::run(cfg, std::cin, std::cout, std::cerr);
}
