#include "trajgrid/cli/cli.hpp"

int main(int argc, char** argv) { return trajgrid::run_cli(argc, argv); }
