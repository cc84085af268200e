#include "ztoa/cli.hpp"

int main(int argc, char** argv) {
    return ztoa::cli_main(argc, argv);
}
