#include "conex/cli_io.hpp"

int main(int argc, char** argv) { return conex::run_cli(argc, argv); }
