#include "equiflow/cli.hpp"

int main(int argc, char** argv) { return equiflow::cli_main(argc, argv); }
