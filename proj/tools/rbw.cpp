#include "rbw/cli.hpp"

int main(int argc, char** argv) { return rbw::cli::run(argc, argv); }
