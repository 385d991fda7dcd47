#include "polyreg/cli.hpp"

int main(int argc, char** argv) { return polyreg::cli::main(argc, argv); }
