// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <filesystem>
#include <string>

#include "larr/dataset.hpp"

namespace larr {

/// Writes <stem>.csv and <stem>.svg under out_dir. 1-D dense numeric data
/// becomes a step plot (bin-edge coord) or a marker plot with error bars;
/// 2-D becomes a heatmap. The CSV carries one row per element with coord
/// (or coord-interval) columns, the value, and stddev = sqrt(variance) when
/// variances are present. Event data must be histogrammed first and rank 3+
/// cannot be plotted (UnsupportedError).
void emit_plot(const DataArrayConstView &da, const std::filesystem::path &out_dir,
               const std::string &stem);

} // namespace larr
