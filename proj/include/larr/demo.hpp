// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>

namespace larr {

/// Deterministic end-to-end pipeline on synthetic event data: generate two
/// event sets (sample and a flat vanadium reference), apply a per-pixel
/// linear time-of-flight calibration, histogram, combine into a dataset,
/// reduce over pixels, normalize, and resolve the sample by scattering
/// angle. Every stage's container is saved under out_dir and the two final
/// results are plotted. Identical arguments produce byte-identical files.
/// Returns the number of files written.
int run_demo(int64_t pixels, int64_t events, uint64_t seed,
             const std::filesystem::path &out_dir, std::ostream &log);

} // namespace larr
