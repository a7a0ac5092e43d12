#include "vintage/commands.hpp"

int main(int argc, char** argv) { return vintage::run_cli(argc, argv); }
