#include "bsll/count.hpp"

int main(int argc, char** argv) { return bsll::run_cli(argc, argv); }
