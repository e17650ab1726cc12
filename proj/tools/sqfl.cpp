#include "sqfl/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    auto parsed = sqfl::cli::parse_args(argc, argv, std::cout, std::cerr);
    if (!parsed.config)
        return parsed.exit_code;
    return sqfl::cli::run(*parsed.config, std::cout, std::cerr);
}
