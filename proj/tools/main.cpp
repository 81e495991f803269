#include "cli.hpp"

int main(int argc, char** argv) { return csmooth_cli::run(argc, argv); }
