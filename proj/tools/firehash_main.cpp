#include "firehash/cli.hpp"

int main(int argc, char** argv) {
    return firehash::cli::run(argc, argv);
}
