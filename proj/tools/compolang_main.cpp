#include "compolang/cli.hpp"

int main(int argc, char** argv) { return compolang::run_cli(argc, argv); }
