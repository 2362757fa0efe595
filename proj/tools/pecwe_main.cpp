#include "pecwe/cli/commands.hpp"

int main(int argc, char** argv) { return pecwe::run_cli(argc, argv); }
