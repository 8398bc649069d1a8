#include "cli.hpp"

int main(int argc, char** argv) { return adapt::cli::run(argc, argv); }
