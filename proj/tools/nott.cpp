#include "nottingham/cli.hpp"

int main(int argc, char** argv) { return nott::cli::cli_main(argc, argv); }
