// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "vabset/cli.hpp"

int main(int argc, char** argv) {
  return vabset::cli_run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
