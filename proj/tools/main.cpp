#include "wellclust/io.hpp"

int main(int argc, char** argv) { return wellclust::run_cli(argc, argv); }
