#include "sta/scenarios.hpp"

int main(int argc, char** argv) { return sta::run_cli(argc, argv); }
