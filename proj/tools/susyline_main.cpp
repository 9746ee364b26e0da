#include "susyline/cli.hpp"

int main(int argc, char** argv) { return susyline::cli::run(argc, argv); }
