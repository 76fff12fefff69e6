// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace larr {

/// Ordered list of (label, extent) pairs identifying the axes of an array.
/// Labels are unique; rank is bounded; extents are non-negative. The element
/// count is the product of extents (1 for rank 0).
class Dims {
public:
  static constexpr int kMaxRank = 6;

  Dims() = default;
  Dims(std::initializer_list<std::pair<std::string, int64_t>> dims);

  void push_back(std::string label, int64_t extent);

  int rank() const { return static_cast<int>(labels_.size()); }
  int64_t volume() const;

  const std::string &label(int i) const { return labels_[static_cast<size_t>(i)]; }
  int64_t extent(int i) const { return extents_[static_cast<size_t>(i)]; }
  /// Extent of a named dim; throws DimsError if absent.
  int64_t extent(std::string_view label) const;
  std::optional<int> index_of(std::string_view label) const;
  /// index_of that throws DimsError when the label is absent.
  int require(std::string_view label) const;
  bool contains(std::string_view label) const { return index_of(label).has_value(); }

  const std::vector<std::string> &labels() const { return labels_; }
  const std::vector<int64_t> &extents() const { return extents_; }

  /// Dims with dim `i` removed.
  Dims erased(int i) const;

  bool operator==(const Dims &) const = default;

  /// "(x: 3, y: 2)"
  std::string to_string() const;

private:
  std::vector<std::string> labels_;
  std::vector<int64_t> extents_;
};

/// Row-major strides; index 0 is the outermost dim.
std::vector<int64_t> row_major_strides(const Dims &dims);

} // namespace larr
