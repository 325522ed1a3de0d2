#include "extomo/cli.hpp"

int main(int argc, char** argv) { return extomo::run_cli(argc, argv); }
