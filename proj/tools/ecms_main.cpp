#include "ecms/cli.hpp"

int main(int argc, char** argv) { return ecms::run_cli(argc, argv); }
