#include "gentess/cli.hpp"

int main(int argc, char** argv) { return gentess::cli::run(argc, argv); }
