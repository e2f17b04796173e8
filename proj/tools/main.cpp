#include "losslab/runner.hpp"

int main(int argc, char** argv) { return losslab::run_cli(argc, argv); }
