#include "mutkit/cli.hpp"

int main(int argc, char** argv) { return mutkit::run_cli(argc, argv); }
