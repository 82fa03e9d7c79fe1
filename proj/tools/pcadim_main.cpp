#include "pcadim/cli.hpp"

int main(int argc, char** argv) { return pcadim::run_cli(argc, argv); }
