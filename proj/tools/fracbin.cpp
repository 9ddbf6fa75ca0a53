// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "fracbin/cli.hpp"

int main(int argc, char** argv) { return fracbin::cli::run(argc, argv, std::cout, std::cerr); }
