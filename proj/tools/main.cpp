#include "gcs/cli.hpp"

int main(int argc, char** argv) { return gcs::run_cli(argc, argv); }
