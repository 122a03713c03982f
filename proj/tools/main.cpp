#include "stablehcm/cli.hpp"

int main(int argc, char** argv) {
    return stablehcm::cli::run(argc, argv);
}
