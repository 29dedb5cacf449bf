#include "losdof/cli.hpp"

int main(int argc, char** argv) { return losdof::cli::run_cli(argc, argv); }
