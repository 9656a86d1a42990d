#include "widomlab/cli/run.hpp"

int main(int argc, char** argv) { return widom::cli::main_entry(argc, argv); }
