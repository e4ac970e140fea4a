#include "rieszlag/cli.hpp"

int main(int argc, char** argv) { return rieszlag::main_entry(argc, argv); }
