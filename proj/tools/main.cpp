#include "cli_app.hpp"

int main(int argc, char** argv) { return energia::cli::run(argc, argv); }
