#include "niga/experiments/cli.hpp"

int main(int argc, char** argv) { return niga::experiments::cli_main(argc, argv); }
