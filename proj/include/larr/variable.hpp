// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "larr/buffer.hpp"
#include "larr/dims.hpp"
#include "larr/dtype.hpp"
#include "larr/error.hpp"
#include "larr/event_storage.hpp"
#include "larr/unit.hpp"

namespace larr {

class Variable;
class VariableConstView;
class VariableView;

using Storage =
    std::variant<Buffer<double>, Buffer<float>, Buffer<int64_t>, Buffer<int32_t>,
                 Buffer<bool>, Buffer<std::string>, EventStorage<double>,
                 EventStorage<float>, EventStorage<int64_t>, EventStorage<int32_t>>;

DType storage_dtype(const Storage &s);

/// Array-valued physical quantity: named dims, one unit for the whole array,
/// row-major values, optional variances of identical shape.
class Variable {
public:
  Variable(Dims dims, Unit unit, Storage values,
           std::optional<Storage> variances = std::nullopt);

  const Dims &dims() const { return dims_; }
  const Unit &unit() const { return unit_; }
  DType dtype() const { return dtype_; }
  bool has_variances() const { return variances_.has_value(); }
  int64_t volume() const { return dims_.volume(); }

  /// Unit is a property of the whole array; only the owning Variable may
  /// change it, never a view.
  void set_unit(const Unit &unit);

  template <class T> std::span<const T> values() const {
    return std::get<Buffer<T>>(values_).span();
  }
  template <class T> std::span<T> values() {
    return std::get<Buffer<T>>(values_).span();
  }
  template <class T> std::span<const T> variances() const {
    return std::get<Buffer<T>>(require_variances()).span();
  }
  template <class T> std::span<T> variances() {
    return std::get<Buffer<T>>(require_variances()).span();
  }
  template <class T> const EventStorage<T> &event_values() const {
    return std::get<EventStorage<T>>(values_);
  }
  template <class T> EventStorage<T> &event_values() {
    return std::get<EventStorage<T>>(values_);
  }
  template <class T> const EventStorage<T> &event_variances() const {
    return std::get<EventStorage<T>>(require_variances());
  }
  template <class T> EventStorage<T> &event_variances() {
    return std::get<EventStorage<T>>(require_variances());
  }

  const Storage &values_storage() const { return values_; }
  const std::optional<Storage> &variances_storage() const { return variances_; }

  VariableConstView slice_point(const std::string &dim, int64_t index) const;
  VariableView slice_point(const std::string &dim, int64_t index);
  VariableConstView slice_range(const std::string &dim, int64_t begin,
                                int64_t end) const;
  VariableView slice_range(const std::string &dim, int64_t begin, int64_t end);
  VariableConstView transpose_to(const std::vector<std::string> &order) const;
  VariableView transpose_to(const std::vector<std::string> &order);

  operator VariableConstView() const;
  operator VariableView();
  VariableConstView const_view() const;
  VariableView view();

  bool operator==(const Variable &other) const;
  bool operator!=(const Variable &other) const { return !(*this == other); }

private:
  const Storage &require_variances() const {
    if (!variances_)
      throw TypeError("variable has no variances");
    return *variances_;
  }
  Storage &require_variances() {
    if (!variances_)
      throw TypeError("variable has no variances");
    return *variances_;
  }

  Dims dims_;
  Unit unit_;
  DType dtype_;
  Storage values_;
  std::optional<Storage> variances_;
};

/// Read-only window into a Variable: an element offset plus one stride per
/// logical dim of the underlying row-major buffer (list index for event
/// data). Cannot change unit, labels, or shape of the underlying array.
class VariableConstView {
public:
  VariableConstView(const Variable &var, Dims dims, int64_t offset,
                    std::vector<int64_t> strides)
      : var_(&var), dims_(std::move(dims)), offset_(offset),
        strides_(std::move(strides)) {}
  explicit VariableConstView(const Variable &var);

  const Dims &dims() const { return dims_; }
  const Unit &unit() const { return var_->unit(); }
  DType dtype() const { return var_->dtype(); }
  bool has_variances() const { return var_->has_variances(); }
  int64_t volume() const { return dims_.volume(); }
  int64_t offset() const { return offset_; }
  const std::vector<int64_t> &strides() const { return strides_; }
  const Variable &underlying() const { return *var_; }

  template <class T> const T *values_base() const {
    return std::get<Buffer<T>>(var_->values_storage()).data();
  }
  template <class T> const T *variances_base() const {
    return std::get<Buffer<T>>(variances_storage_checked()).data();
  }
  template <class T> const EventStorage<T> &event_values() const {
    return var_->event_values<T>();
  }
  template <class T> const EventStorage<T> &event_variances() const {
    return var_->event_variances<T>();
  }

  /// Map logical indices (one per dim, in dims() order) to the underlying
  /// flat element index.
  int64_t underlying_index(std::span<const int64_t> indices) const;

  template <class T> const T &value_at(std::initializer_list<int64_t> idx) const {
    return values_base<T>()[underlying_index({idx.begin(), idx.size()})];
  }
  template <class T> const T &value_at(std::span<const int64_t> idx) const {
    return values_base<T>()[underlying_index(idx)];
  }
  template <class T>
  const T &variance_at(std::initializer_list<int64_t> idx) const {
    return variances_base<T>()[underlying_index({idx.begin(), idx.size()})];
  }
  template <class T>
  const T &variance_at(std::span<const int64_t> idx) const {
    return variances_base<T>()[underlying_index(idx)];
  }

  VariableConstView slice_point(const std::string &dim, int64_t index) const;
  VariableConstView slice_range(const std::string &dim, int64_t begin,
                                int64_t end) const;
  VariableConstView transpose_to(const std::vector<std::string> &order) const;

protected:
  const Storage &variances_storage_checked() const {
    if (!var_->has_variances())
      throw TypeError("variable has no variances");
    return *var_->variances_storage();
  }
  // Slice arithmetic shared with VariableView; returns dims/offset/strides.
  struct Spec {
    Dims dims;
    int64_t offset;
    std::vector<int64_t> strides;
  };
  Spec point_spec(const std::string &dim, int64_t index) const;
  Spec range_spec(const std::string &dim, int64_t begin, int64_t end) const;
  Spec transpose_spec(const std::vector<std::string> &order) const;

  const Variable *var_;
  Dims dims_;
  int64_t offset_ = 0;
  std::vector<int64_t> strides_;
};

/// Mutable counterpart of VariableConstView: writes land in the underlying
/// Variable and are visible through every overlapping view.
class VariableView : public VariableConstView {
public:
  VariableView(Variable &var, Dims dims, int64_t offset,
               std::vector<int64_t> strides)
      : VariableConstView(var, std::move(dims), offset, std::move(strides)),
        mut_(&var) {}
  explicit VariableView(Variable &var);

  Variable &underlying() const { return *mut_; }

  template <class T> T *values_base() const {
    return const_cast<T *>(VariableConstView::values_base<T>());
  }
  template <class T> T *variances_base() const {
    return const_cast<T *>(VariableConstView::variances_base<T>());
  }
  template <class T> EventStorage<T> &event_values() const {
    return mut_->event_values<T>();
  }
  template <class T> EventStorage<T> &event_variances() const {
    return mut_->event_variances<T>();
  }

  template <class T> T &value_at(std::initializer_list<int64_t> idx) const {
    return values_base<T>()[underlying_index({idx.begin(), idx.size()})];
  }
  template <class T> T &value_at(std::span<const int64_t> idx) const {
    return values_base<T>()[underlying_index(idx)];
  }
  template <class T> T &variance_at(std::initializer_list<int64_t> idx) const {
    return variances_base<T>()[underlying_index({idx.begin(), idx.size()})];
  }
  template <class T> T &variance_at(std::span<const int64_t> idx) const {
    return variances_base<T>()[underlying_index(idx)];
  }

  VariableView slice_point(const std::string &dim, int64_t index) const;
  VariableView slice_range(const std::string &dim, int64_t begin,
                           int64_t end) const;
  VariableView transpose_to(const std::vector<std::string> &order) const;

private:
  Variable *mut_;
};

/// Validating factory for dense variables.
template <class T>
Variable make_variable(Dims dims, Unit unit, std::vector<T> values,
                       std::optional<std::vector<T>> variances = std::nullopt) {
  std::optional<Storage> var_storage;
  if (variances)
    var_storage = Buffer<T>(*variances);
  return Variable(std::move(dims), unit, Buffer<T>(values), std::move(var_storage));
}

/// Deep, contiguous, independent copy of a view.
Variable copy(const VariableConstView &v);

/// Explicit unit conversion: values scaled by v.unit.scale/target.scale,
/// variances by its square. Requires equal exponents and float data.
Variable to_unit(const VariableConstView &v, const Unit &target);

/// Deep equality: dims, unit, dtype, variance presence, and element-wise
/// bit-exact values (NaN compares equal to the identically-coded NaN).
bool equals(const VariableConstView &a, const VariableConstView &b);

/// Bitwise scalar comparison used by `equals`; strings compare by value.
template <class T> bool bitwise_equal(const T &a, const T &b);

/// Offsets table of an event-list variable; TypeError for dense data.
const std::vector<int64_t> &event_offsets(const Variable &v);

} // namespace larr
