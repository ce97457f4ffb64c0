#include "qevo/cli.hpp"

int main(int argc, char** argv) { return qevo::cli::run(argc, argv); }
