#include "besseltrace/cli.hpp"

int main(int argc, char** argv) {
    return besseltrace::cli::main_entry(argc, argv);
}
