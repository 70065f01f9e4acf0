#include "fdl/cli.hpp"

int main(int argc, char** argv) { return fdl::cli::run(argc, argv); }
