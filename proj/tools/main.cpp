#include "cyclepack/cli.hpp"

int main(int argc, char** argv) { return cyclepack::cli_main(argc, argv); }
