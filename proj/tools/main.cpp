#include "periham/cli.hpp"

int main(int argc, char** argv) {
    return periham::cli_main(argc, argv);
}
