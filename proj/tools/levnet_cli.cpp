#include <string>
#include <vector>

#include "levnet/commands.hpp"

int main(int argc, char** argv) {
    return levnet::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
