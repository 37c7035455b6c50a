#include "gcolex/cli.hpp"

int main(int argc, char** argv) { return gcolex::cli::run(argc, argv); }
