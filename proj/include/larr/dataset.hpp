// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <map>
#include <string>
#include <vector>

#include "larr/data_array.hpp"

namespace larr {

/// Name-keyed data arrays sharing one coordinate dictionary, with every
/// dimension label aligned in extent across all items (bin-edge +1 applies
/// to coords only). Accessing an item yields a DataArray view over the
/// shared coords that fit that item's dims.
class Dataset {
public:
  struct Item {
    Variable data;
    std::map<std::string, Variable> attrs;
    bool operator==(const Item &) const = default;
  };

  Dataset() = default;

  void set(const std::string &name, DataArray da);
  DataArrayConstView get(const std::string &name) const;
  DataArrayView get(const std::string &name);
  bool has(const std::string &name) const { return items_.count(name) != 0; }
  void erase(const std::string &name);
  std::vector<std::string> names() const;
  size_t size() const { return items_.size(); }

  const std::map<std::string, Variable> &coords() const { return coords_; }
  void set_coord(const std::string &name, Variable coord);
  const std::map<std::string, Item> &items() const { return items_; }

  /// Re-derives the dimension registry from scratch and re-checks every
  /// per-item container invariant.
  void validate() const;

  bool operator==(const Dataset &other) const;
  bool operator!=(const Dataset &other) const { return !(*this == other); }

private:
  // Extent per dim label derived from item data (coords get the +1 edge
  // allowance relative to these).
  std::map<std::string, int64_t> data_extents() const;
  void check_coord_against(const std::map<std::string, int64_t> &extents,
                           const std::string &name,
                           const Variable &coord) const;

  std::map<std::string, Variable> coords_;
  std::map<std::string, Item> items_;
};

/// Does this coord describe (part of) data with the given dims? Dense coords
/// need every label present, with the bin-edge +1 allowance on their inner
/// dim; event coords need the exact list structure of the data.
bool coord_fits(const Variable &coord, const Variable &data);

/// Binary operations match items by name: the result holds op(a[n], b[n])
/// for names present in both operands, over the merged coords.
Dataset add(const Dataset &a, const Dataset &b);
Dataset subtract(const Dataset &a, const Dataset &b);
Dataset multiply(const Dataset &a, const Dataset &b);
Dataset divide(const Dataset &a, const Dataset &b);

} // namespace larr
