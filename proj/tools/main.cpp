#include "wickgraph/cli.hpp"

int main(int argc, char** argv) { return wickgraph::run_cli(argc, argv); }
