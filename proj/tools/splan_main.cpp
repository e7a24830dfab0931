#include "speedplan/cli.hpp"

int main(int argc, char** argv) { return speedplan::run_cli(argc, argv); }
