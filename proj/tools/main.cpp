#include <vector>

#include "eftlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return eftlab::run_command(args);
}
