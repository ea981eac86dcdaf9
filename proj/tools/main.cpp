#include "gupscat/cli.hpp"

int main(int argc, char** argv) { return gupscat::run_cli(argc, argv); }
