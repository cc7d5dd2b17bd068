#include "frbc/cli.hpp"

int main(int argc, char** argv) { return frbc::run_cli(argc, argv); }
