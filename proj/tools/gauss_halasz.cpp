#include "zi/cli.hpp"

int main(int argc, char** argv) { return zi::cli::run(argc, argv); }
