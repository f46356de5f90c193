#include <iostream>

#include "nullstate_cli/app.hpp"

int main(int argc, char** argv) { return nullstate::cli::run_app(argc, argv, std::cout, std::cerr); }
