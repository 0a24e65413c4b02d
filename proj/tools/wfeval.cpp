#include "wfeval/cli.hpp"

int main(int argc, char** argv) { return wfeval::cli_main(argc, argv); }
