#include "newcoef/cli.hpp"

int main(int argc, char ** argv) { return newcoef::run(argc, argv); }
