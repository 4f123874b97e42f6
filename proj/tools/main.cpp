#include "cli.hpp"

#include "lamlab/deep_stack.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    int rc = 0;
    try {
        lamlab::run_on_deep_stack([&] { rc = lamlab::cli::run(args, std::cout, std::cerr); });
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return lamlab::cli::kResourceError;
    }
    return rc;
}
