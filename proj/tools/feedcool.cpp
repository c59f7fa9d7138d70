#include <iostream>

#include "feedcool/cli/commands.hpp"

int main(int argc, char** argv) { return feedcool::cli::run(argc, argv, std::cout, std::cerr); }
