#include "vps/cli.hpp"

int main(int argc, char** argv) { return vps::cli::dispatch(argc, argv); }
