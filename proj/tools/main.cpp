#include <vector>

#include "ptorbit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ptorbit::run_cli(args);
}
