// SPDX-License-Identifier: Apache-2.0

#include "biot/cli.hpp"

int main(int argc, char **argv) { return biot::cli_main(argc, argv); }
