#include "flagproj/cli.hpp"

int main(int argc, char** argv) { return flagproj::run_cli(argc, argv); }
