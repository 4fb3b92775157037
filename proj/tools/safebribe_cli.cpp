#include <iostream>
#include <string>
#include <vector>

#include "safebribe/io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const safebribe::CommandResult result = safebribe::run_command(args);
    std::cout << result.report;
    return result.exit_code;
}
