#include "editguard/cli.hpp"

int main(int argc, char** argv) { return editguard::cli::run(argc, argv); }
