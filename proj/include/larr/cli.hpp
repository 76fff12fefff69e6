// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <iostream>

namespace larr {

/// Command-line entry point. Exit codes: 0 success, 2 operation or
/// validation failure, 64 bad usage, 66 file not readable/writable.
int run_cli(int argc, const char *const *argv, std::ostream &out = std::cout,
            std::ostream &err = std::cerr);

} // namespace larr
