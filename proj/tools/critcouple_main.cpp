#include "critcouple/cli.hpp"

int main(int argc, char** argv) { return critcouple::cli::run(argc, argv); }
