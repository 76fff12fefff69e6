// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/cli.hpp"

int main(int argc, char **argv) { return larr::run_cli(argc, argv); }
