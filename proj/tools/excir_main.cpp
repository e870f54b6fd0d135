#include <string>
#include <vector>

#include "excir/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return excir::cli::run(std::move(args));
}
