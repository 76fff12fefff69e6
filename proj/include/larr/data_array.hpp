// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <map>
#include <string>

#include "larr/variable.hpp"

namespace larr {

class DataArrayConstView;
class DataArrayView;

/// A data Variable plus coordinate and attribute dictionaries.
///
/// Coords are aligned with the data: their dims are a subset of the data
/// dims and extents match, except that a coord may exceed the data extent by
/// one along its own inner dim (a bin-edge coordinate). A coord whose name
/// equals one of its dim labels is a dimension-coordinate; any other name is
/// an auxiliary axis label. Event-list data additionally requires at least
/// one event coord whose per-list lengths match the data exactly.
///
/// Attrs are unaligned metadata; labels shared with the data must still
/// agree in extent (+1 allowed, so former bin-edge coords can live here).
class DataArray {
public:
  explicit DataArray(Variable data,
                     std::map<std::string, Variable> coords = {},
                     std::map<std::string, Variable> attrs = {});

  const Variable &data() const { return data_; }
  Variable &data() { return data_; }
  const Dims &dims() const { return data_.dims(); }
  const Unit &unit() const { return data_.unit(); }

  const std::map<std::string, Variable> &coords() const { return coords_; }
  const std::map<std::string, Variable> &attrs() const { return attrs_; }
  bool has_coord(const std::string &name) const {
    return coords_.count(name) != 0;
  }
  bool has_attr(const std::string &name) const {
    return attrs_.count(name) != 0;
  }
  /// Throws KeyError if absent.
  const Variable &coord(const std::string &name) const;
  const Variable &attr(const std::string &name) const;

  void set_coord(const std::string &name, Variable coord);
  void set_attr(const std::string &name, Variable attr);
  void erase_coord(const std::string &name);

  DataArrayConstView slice_point(const std::string &dim, int64_t index) const;
  DataArrayView slice_point(const std::string &dim, int64_t index);
  DataArrayConstView slice_range(const std::string &dim, int64_t begin,
                                 int64_t end) const;
  DataArrayView slice_range(const std::string &dim, int64_t begin,
                            int64_t end);

  DataArrayConstView const_view() const;
  DataArrayView view();
  operator DataArrayConstView() const;

  bool operator==(const DataArray &other) const;
  bool operator!=(const DataArray &other) const { return !(*this == other); }

  /// Re-checks every container invariant from scratch.
  void validate() const;

private:
  Variable data_;
  std::map<std::string, Variable> coords_;
  std::map<std::string, Variable> attrs_;
};

/// Read-only window onto a DataArray (or dataset item): variable views for
/// data, coords, and attrs. Produced by slicing; slicing a view applies the
/// coordinate rules again relative to the view.
class DataArrayConstView {
public:
  DataArrayConstView(VariableConstView data,
                     std::map<std::string, VariableConstView> coords,
                     std::map<std::string, VariableConstView> attrs)
      : data_(std::move(data)), coords_(std::move(coords)),
        attrs_(std::move(attrs)) {}

  const VariableConstView &data() const { return data_; }
  const Dims &dims() const { return data_.dims(); }
  const Unit &unit() const { return data_.unit(); }
  const std::map<std::string, VariableConstView> &coords() const {
    return coords_;
  }
  const std::map<std::string, VariableConstView> &attrs() const {
    return attrs_;
  }
  bool has_coord(const std::string &name) const {
    return coords_.count(name) != 0;
  }
  const VariableConstView &coord(const std::string &name) const;

  DataArrayConstView slice_point(const std::string &dim, int64_t index) const;
  DataArrayConstView slice_range(const std::string &dim, int64_t begin,
                                 int64_t end) const;

private:
  VariableConstView data_;
  std::map<std::string, VariableConstView> coords_;
  std::map<std::string, VariableConstView> attrs_;
};

/// Mutable counterpart: data writes land in the underlying container; coords
/// and attrs stay read-only through views, and shape/labels/unit cannot
/// change (the dataset alignment invariant).
class DataArrayView {
public:
  DataArrayView(VariableView data,
                std::map<std::string, VariableConstView> coords,
                std::map<std::string, VariableConstView> attrs)
      : data_(std::move(data)), coords_(std::move(coords)),
        attrs_(std::move(attrs)) {}

  const VariableView &data() const { return data_; }
  const Dims &dims() const { return data_.dims(); }
  const Unit &unit() const { return data_.unit(); }
  const std::map<std::string, VariableConstView> &coords() const {
    return coords_;
  }
  const std::map<std::string, VariableConstView> &attrs() const {
    return attrs_;
  }
  bool has_coord(const std::string &name) const {
    return coords_.count(name) != 0;
  }
  const VariableConstView &coord(const std::string &name) const;

  DataArrayView slice_point(const std::string &dim, int64_t index) const;
  DataArrayView slice_range(const std::string &dim, int64_t begin,
                            int64_t end) const;

  operator DataArrayConstView() const;

private:
  VariableView data_;
  std::map<std::string, VariableConstView> coords_;
  std::map<std::string, VariableConstView> attrs_;
};

/// True iff the coord exceeds the data extent by one along `dim`.
bool is_edges(const DataArrayConstView &da, const std::string &coord_name,
              const std::string &dim);

/// Deep, independent copy of a view.
DataArray copy(const DataArrayConstView &da);

bool equals(const DataArrayConstView &a, const DataArrayConstView &b);

/// Binary operations with coordinate matching: coords named in both operands
/// must be bit-identical; a coord private to one operand is allowed only if
/// its dims do not appear in the other operand's data. Attrs survive when
/// unique to one operand or equal in both.
DataArray add(const DataArrayConstView &a, const DataArrayConstView &b);
DataArray subtract(const DataArrayConstView &a, const DataArrayConstView &b);
DataArray multiply(const DataArrayConstView &a, const DataArrayConstView &b);
DataArray divide(const DataArrayConstView &a, const DataArrayConstView &b);

/// Reductions: coords and attrs containing `dim` are dropped, others kept.
DataArray sum(const DataArrayConstView &da, const std::string &dim);
DataArray mean(const DataArrayConstView &da, const std::string &dim);

} // namespace larr
