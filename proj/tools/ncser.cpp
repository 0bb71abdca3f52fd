#include "ncser/cli.hpp"

int main(int argc, char** argv) {
    return ncser::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
