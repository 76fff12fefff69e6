// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "larr/dataset.hpp"

namespace larr {

/// A file holds either a single data array or a dataset.
using Document = std::variant<DataArray, Dataset>;

/// Shortest decimal text that parses back to exactly v. Non-finite values
/// render as nan / inf / -inf.
std::string format_double(double v);
std::string format_float(float v);

std::string to_json_text(const DataArrayConstView &da);
std::string to_json_text(const Dataset &ds);

/// Throws ParseError for malformed or structurally invalid documents; the
/// container constructors reject invariant violations (e.g. ValidationError
/// for broken event offsets).
Document from_json_text(const std::string &text);

void save(const DataArrayConstView &da, const std::filesystem::path &path);
void save(const Dataset &ds, const std::filesystem::path &path);

/// Throws IoError when the file cannot be read.
Document load(const std::filesystem::path &path);

} // namespace larr
