#include "semnoma/cli.hpp"

int main(int argc, char** argv) { return semnoma::run_cli(argc, argv); }
