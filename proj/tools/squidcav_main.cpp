#include "squidcav/cli.h"

int main(int argc, char** argv) { return squidcav::cli::main_entry(argc, argv); }
