// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "vhtk/cli.hpp"

int main(int argc, char** argv) { return vh::cli::run(argc, argv, std::cout, std::cerr); }
