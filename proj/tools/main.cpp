#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "hsnewton/config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return hsnewton::run_command(args);
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 2;
    }
}
