// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <string>
#include <vector>

#include "larr/data_array.hpp"

namespace larr {

class GroupBy;

/// Group the rows of `da` along the dim of the named 1-D dense coord, one
/// group per distinct coord value, in order of first occurrence.
GroupBy groupby(const DataArrayConstView &da, const std::string &coord_name);

/// Group rows into the half-open bins defined by `bins` (1-D, strictly
/// increasing edges whose dim label equals the coord name). Rows outside the
/// edge range belong to no group; empty groups are kept.
GroupBy groupby(const DataArrayConstView &da, const std::string &coord_name,
                const VariableConstView &bins);

/// Split-apply-combine over one dim. Holds a deep copy of the source plus
/// the member-row indices of every group; the grouped dim is replaced by a
/// new dim named after the grouping coord.
class GroupBy {
public:
  int64_t n_groups() const { return static_cast<int64_t>(groups_.size()); }
  /// Output dim label (the grouping coord's name).
  const std::string &dim() const { return name_; }
  /// Source dim consumed by the reduction.
  const std::string &reduced_dim() const { return reduced_; }
  /// Coord attached to results: group keys, or bin edges when binned.
  const Variable &key() const { return key_; }
  const std::vector<int64_t> &group(int64_t i) const {
    return groups_[static_cast<size_t>(i)];
  }

  /// Sum the member rows of each group (dense data).
  DataArray sum() const;
  /// Per-group mean; empty bins yield NaN. Float data only.
  DataArray mean() const;
  /// Concatenate the event lists of each group's member rows (event data).
  DataArray flatten() const;

private:
  friend GroupBy groupby(const DataArrayConstView &, const std::string &);
  friend GroupBy groupby(const DataArrayConstView &, const std::string &,
                         const VariableConstView &);

  GroupBy(DataArray source, std::string name, std::string reduced,
          std::vector<std::vector<int64_t>> groups, Variable key, bool binned)
      : source_(std::move(source)), name_(std::move(name)),
        reduced_(std::move(reduced)), groups_(std::move(groups)),
        key_(std::move(key)), binned_(binned) {}

  Dims output_dims(const Dims &in) const;

  DataArray source_;
  std::string name_;
  std::string reduced_;
  std::vector<std::vector<int64_t>> groups_;
  Variable key_;
  bool binned_;
};

} // namespace larr
