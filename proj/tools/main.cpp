#include "commands.hpp"

int main(int argc, char** argv) { return ldint::cli::run(argc, argv); }
