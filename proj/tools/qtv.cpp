#include <qtv/cli.hpp>

int main(int argc, char** argv) { return qtv::cli::run_cli(argc, argv, std::cout, std::cerr); }
