#include <iostream>

#include "qseq_cli.hpp"

int main(int argc, char** argv) { return qseq::cli::run_cli(argc, argv, std::cout, std::cerr); }
