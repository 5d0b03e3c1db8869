#include "cli_app.hpp"

int main(int argc, char **argv) { return capbound::cli::run(argc, argv); }
