#include "cli.hpp"

int main(int argc, char** argv) { return ballbeam::cli::run(argc, argv); }
