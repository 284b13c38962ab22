#include "fibwrt/cli.hpp"

int main(int argc, char** argv) { return fibwrt::run_cli(argc, argv); }
