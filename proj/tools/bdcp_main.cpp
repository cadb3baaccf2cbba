#include "bdcp/cli_app.hpp"

int main(int argc, char **argv) { return bdcp::run_cli(argc, argv); }
