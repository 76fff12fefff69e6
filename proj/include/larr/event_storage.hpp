// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "larr/error.hpp"

namespace larr {

/// Ragged array of variable-length lists in CSR layout: one flat element
/// buffer plus non-decreasing start offsets. List i occupies
/// flat[offsets[i] .. offsets[i+1]).
template <class T> struct EventStorage {
  std::vector<int64_t> offsets{0};
  std::vector<T> flat;

  EventStorage() = default;
  EventStorage(std::vector<int64_t> offs, std::vector<T> elems)
      : offsets(std::move(offs)), flat(std::move(elems)) {
    validate();
  }

  static EventStorage from_lists(const std::vector<std::vector<T>> &lists) {
    EventStorage out;
    out.offsets.reserve(lists.size() + 1);
    for (const auto &list : lists) {
      out.flat.insert(out.flat.end(), list.begin(), list.end());
      out.offsets.push_back(static_cast<int64_t>(out.flat.size()));
    }
    return out;
  }

  int64_t list_count() const { return static_cast<int64_t>(offsets.size()) - 1; }
  int64_t list_size(int64_t i) const { return offsets[i + 1] - offsets[i]; }
  int64_t total_size() const { return static_cast<int64_t>(flat.size()); }

  std::span<T> list(int64_t i) {
    return {flat.data() + offsets[i], static_cast<size_t>(list_size(i))};
  }
  std::span<const T> list(int64_t i) const {
    return {flat.data() + offsets[i], static_cast<size_t>(list_size(i))};
  }

  void append_list(std::span<const T> values) {
    flat.insert(flat.end(), values.begin(), values.end());
    offsets.push_back(static_cast<int64_t>(flat.size()));
  }

  void validate() const {
    if (offsets.empty() || offsets.front() != 0)
      throw ValidationError("event offsets must start at 0");
    for (size_t i = 1; i < offsets.size(); ++i)
      if (offsets[i] < offsets[i - 1])
        throw ValidationError("event offsets decrease at index " + std::to_string(i));
    if (offsets.back() != static_cast<int64_t>(flat.size()))
      throw ValidationError("event offsets end at " + std::to_string(offsets.back()) +
                            " but flat buffer holds " + std::to_string(flat.size()) +
                            " elements");
  }

  bool operator==(const EventStorage &) const = default;
};

} // namespace larr
