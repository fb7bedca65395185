#include <string>
#include <vector>

#include "seqemp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return seqemp::run_cli(args);
}
