#include "adiabat/commands.hpp"

int main(int argc, char** argv) { return adiabat::run_cli(argc, argv); }
