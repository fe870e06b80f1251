#include <string>
#include <vector>

#include "bider/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bider::run_cli(std::move(args));
}
