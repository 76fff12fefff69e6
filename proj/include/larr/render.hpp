// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <string>

#include "larr/dataset.hpp"

namespace larr {

/// One line per entry (data, coords, attrs, items) with role, dims, dtype,
/// unit, and variance/bin-edge markers. Never touches bulk values, so it is
/// cheap for any size. ANSI styling unless LARR_NO_COLOR is set.
std::string render_structure(const DataArrayConstView &da);
std::string render_structure(const Dataset &ds);

/// Value table for 0-D or 1-D dense data: one column per coord varying
/// along the dim (bin-edge coords as half-open intervals), then value and
/// variance columns. Units live in the headers. Event or higher-rank data
/// is not tabulable (UnsupportedError).
std::string render_table(const DataArrayConstView &da);

} // namespace larr
