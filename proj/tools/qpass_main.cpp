#include "qpass/cli/cli_app.hpp"

int main(int argc, char** argv) { return qpass::cli::run_cli(argc, argv); }
