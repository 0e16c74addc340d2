#include "dlwr/cli.hpp"

int main(int argc, char** argv) { return dlwr::cli_main(argc, argv); }
