#include "vimod/evalkit.hpp"

int main(int argc, char** argv) { return vimod::run_cli(argc, argv); }
