// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/data_array.hpp"

#include <utility>

#include "larr/ops.hpp"

namespace larr {

namespace {

// Bin-edge behavior applies only along the coord's own inner dim.
template <class V>
bool edge_along(const V &coord, const Dims &data_dims, const std::string &dim) {
  const Dims &cd = coord.dims();
  if (cd.rank() == 0 || cd.label(cd.rank() - 1) != dim)
    return false;
  if (!data_dims.contains(dim))
    return false;
  return cd.extent(cd.rank() - 1) == data_dims.extent(dim) + 1;
}

template <class DAView, class DataV>
DAView do_slice_point(const DataV &data,
                      const std::map<std::string, VariableConstView> &coords,
                      const std::map<std::string, VariableConstView> &attrs,
                      const std::string &dim, int64_t index) {
  auto sdata = data.slice_point(dim, index);
  std::map<std::string, VariableConstView> scoords;
  std::map<std::string, VariableConstView> sattrs;
  for (const auto &[name, a] : attrs) {
    if (a.dims().contains(dim))
      sattrs.emplace(name, a.slice_point(dim, index));
    else
      sattrs.emplace(name, a);
  }
  for (const auto &[name, c] : coords) {
    if (is_event(c.dtype())) {
      // Event coords describe the internal list axis, which survives the
      // slice, so they keep their coord role.
      scoords.emplace(name,
                      c.dims().contains(dim) ? c.slice_point(dim, index) : c);
      continue;
    }
    if (!c.dims().contains(dim)) {
      scoords.emplace(name, c);
      continue;
    }
    // The sliced-out axis no longer aligns this coord with the data: keep
    // it as metadata. Bin-edge coords retain the enclosing edge pair.
    if (edge_along(c, data.dims(), dim))
      sattrs.insert_or_assign(name, c.slice_range(dim, index, index + 2));
    else
      sattrs.insert_or_assign(name, c.slice_point(dim, index));
  }
  return DAView(std::move(sdata), std::move(scoords), std::move(sattrs));
}

template <class DAView, class DataV>
DAView do_slice_range(const DataV &data,
                      const std::map<std::string, VariableConstView> &coords,
                      const std::map<std::string, VariableConstView> &attrs,
                      const std::string &dim, int64_t begin, int64_t end) {
  auto sdata = data.slice_range(dim, begin, end);
  std::map<std::string, VariableConstView> scoords;
  std::map<std::string, VariableConstView> sattrs;
  for (const auto &[name, c] : coords) {
    if (!c.dims().contains(dim)) {
      scoords.emplace(name, c);
    } else if (!is_event(c.dtype()) && edge_along(c, data.dims(), dim)) {
      scoords.emplace(name, c.slice_range(dim, begin, end + 1));
    } else {
      scoords.emplace(name, c.slice_range(dim, begin, end));
    }
  }
  for (const auto &[name, a] : attrs) {
    if (a.dims().contains(dim))
      sattrs.emplace(name, a.slice_range(dim, begin, end));
    else
      sattrs.emplace(name, a);
  }
  return DAView(std::move(sdata), std::move(scoords), std::move(sattrs));
}

std::map<std::string, VariableConstView>
const_views_of(const std::map<std::string, Variable> &m) {
  std::map<std::string, VariableConstView> out;
  for (const auto &[name, v] : m)
    out.emplace(name, VariableConstView(v));
  return out;
}

} // namespace

DataArray::DataArray(Variable data, std::map<std::string, Variable> coords,
                     std::map<std::string, Variable> attrs)
    : data_(std::move(data)), coords_(std::move(coords)),
      attrs_(std::move(attrs)) {
  validate();
}

void DataArray::validate() const {
  const Dims &dd = data_.dims();
  bool have_event_coord = false;
  for (const auto &[name, c] : coords_) {
    if (is_event(c.dtype())) {
      if (!is_event(data_.dtype()))
        throw CoordError("event coordinate '" + name +
                         "' attached to dense data");
      if (c.dims() != dd)
        throw CoordError("event coordinate '" + name + "' has dims " +
                         c.dims().to_string() + " but data has " +
                         dd.to_string());
      if (event_offsets(c) != event_offsets(data_))
        throw ShapeError("event coordinate '" + name +
                         "' list lengths differ from the data's");
      have_event_coord = true;
      continue;
    }
    const Dims &cd = c.dims();
    for (int i = 0; i < cd.rank(); ++i) {
      const std::string &label = cd.label(i);
      if (!dd.contains(label))
        throw CoordError("coordinate '" + name + "' depends on dimension '" +
                         label + "' absent from the data");
      const int64_t want = dd.extent(label);
      const int64_t got = cd.extent(i);
      const bool inner = i == cd.rank() - 1;
      if (got != want && !(inner && got == want + 1))
        throw CoordError("coordinate '" + name + "' extent " +
                         std::to_string(got) + " along '" + label +
                         "' does not match data extent " +
                         std::to_string(want) +
                         (inner ? " (+1 for bin edges)" : ""));
    }
  }
  if (is_event(data_.dtype()) && !have_event_coord)
    throw CoordError("event data requires at least one event coordinate");
  for (const auto &[name, a] : attrs_) {
    const Dims &ad = a.dims();
    for (int i = 0; i < ad.rank(); ++i) {
      const std::string &label = ad.label(i);
      if (!dd.contains(label))
        continue; // unaligned metadata may keep dims the data lost
      const int64_t want = dd.extent(label);
      const int64_t got = ad.extent(i);
      if (got != want && got != want + 1)
        throw ValidationError("attribute '" + name + "' extent " +
                              std::to_string(got) + " along '" + label +
                              "' is inconsistent with data extent " +
                              std::to_string(want));
    }
  }
}

const Variable &DataArray::coord(const std::string &name) const {
  const auto it = coords_.find(name);
  if (it == coords_.end())
    throw KeyError("no coordinate '" + name + "'");
  return it->second;
}

const Variable &DataArray::attr(const std::string &name) const {
  const auto it = attrs_.find(name);
  if (it == attrs_.end())
    throw KeyError("no attribute '" + name + "'");
  return it->second;
}

void DataArray::set_coord(const std::string &name, Variable coord) {
  auto previous = coords_.find(name) != coords_.end()
                      ? std::optional<Variable>(coords_.at(name))
                      : std::nullopt;
  coords_.insert_or_assign(name, std::move(coord));
  try {
    validate();
  } catch (...) {
    if (previous)
      coords_.insert_or_assign(name, std::move(*previous));
    else
      coords_.erase(name);
    throw;
  }
}

void DataArray::set_attr(const std::string &name, Variable attr) {
  auto previous = attrs_.find(name) != attrs_.end()
                      ? std::optional<Variable>(attrs_.at(name))
                      : std::nullopt;
  attrs_.insert_or_assign(name, std::move(attr));
  try {
    validate();
  } catch (...) {
    if (previous)
      attrs_.insert_or_assign(name, std::move(*previous));
    else
      attrs_.erase(name);
    throw;
  }
}

void DataArray::erase_coord(const std::string &name) {
  if (!coords_.erase(name))
    throw KeyError("no coordinate '" + name + "'");
  validate();
}

DataArrayConstView DataArray::const_view() const {
  return {VariableConstView(data_), const_views_of(coords_),
          const_views_of(attrs_)};
}

DataArrayView DataArray::view() {
  return {VariableView(data_), const_views_of(coords_),
          const_views_of(attrs_)};
}

DataArray::operator DataArrayConstView() const { return const_view(); }

DataArrayConstView DataArray::slice_point(const std::string &dim,
                                          int64_t index) const {
  return const_view().slice_point(dim, index);
}

DataArrayView DataArray::slice_point(const std::string &dim, int64_t index) {
  return view().slice_point(dim, index);
}

DataArrayConstView DataArray::slice_range(const std::string &dim,
                                          int64_t begin, int64_t end) const {
  return const_view().slice_range(dim, begin, end);
}

DataArrayView DataArray::slice_range(const std::string &dim, int64_t begin,
                                     int64_t end) {
  return view().slice_range(dim, begin, end);
}

bool DataArray::operator==(const DataArray &other) const {
  return equals(const_view(), other.const_view());
}

const VariableConstView &
DataArrayConstView::coord(const std::string &name) const {
  const auto it = coords_.find(name);
  if (it == coords_.end())
    throw KeyError("no coordinate '" + name + "'");
  return it->second;
}

DataArrayConstView DataArrayConstView::slice_point(const std::string &dim,
                                                   int64_t index) const {
  return do_slice_point<DataArrayConstView>(data_, coords_, attrs_, dim,
                                            index);
}

DataArrayConstView DataArrayConstView::slice_range(const std::string &dim,
                                                   int64_t begin,
                                                   int64_t end) const {
  return do_slice_range<DataArrayConstView>(data_, coords_, attrs_, dim, begin,
                                            end);
}

const VariableConstView &DataArrayView::coord(const std::string &name) const {
  const auto it = coords_.find(name);
  if (it == coords_.end())
    throw KeyError("no coordinate '" + name + "'");
  return it->second;
}

DataArrayView DataArrayView::slice_point(const std::string &dim,
                                         int64_t index) const {
  return do_slice_point<DataArrayView>(data_, coords_, attrs_, dim, index);
}

DataArrayView DataArrayView::slice_range(const std::string &dim, int64_t begin,
                                         int64_t end) const {
  return do_slice_range<DataArrayView>(data_, coords_, attrs_, dim, begin,
                                       end);
}

DataArrayView::operator DataArrayConstView() const {
  return {VariableConstView(data_.underlying(), data_.dims(), data_.offset(),
                            data_.strides()),
          coords_, attrs_};
}

bool is_edges(const DataArrayConstView &da, const std::string &coord_name,
              const std::string &dim) {
  const VariableConstView &c = da.coord(coord_name);
  const int i = c.dims().require(dim);
  return c.dims().extent(i) == da.dims().extent(dim) + 1;
}

DataArray copy(const DataArrayConstView &da) {
  std::map<std::string, Variable> coords;
  for (const auto &[name, c] : da.coords())
    coords.emplace(name, copy(c));
  std::map<std::string, Variable> attrs;
  for (const auto &[name, a] : da.attrs())
    attrs.emplace(name, copy(a));
  return DataArray(copy(da.data()), std::move(coords), std::move(attrs));
}

bool equals(const DataArrayConstView &a, const DataArrayConstView &b) {
  if (!equals(a.data(), b.data()))
    return false;
  auto maps_equal = [](const std::map<std::string, VariableConstView> &ma,
                       const std::map<std::string, VariableConstView> &mb) {
    if (ma.size() != mb.size())
      return false;
    for (const auto &[name, va] : ma) {
      const auto it = mb.find(name);
      if (it == mb.end() || !equals(va, it->second))
        return false;
    }
    return true;
  };
  return maps_equal(a.coords(), b.coords()) && maps_equal(a.attrs(), b.attrs());
}

namespace {

using VarBinOp = Variable (*)(const VariableConstView &,
                              const VariableConstView &);

void check_one_sided_coord(const std::string &what, const std::string &name,
                           const VariableConstView &coord, const Dims &other) {
  for (const std::string &label : coord.dims().labels())
    if (other.contains(label))
      throw CoordError(what + ": coordinate '" + name +
                       "' is missing from one operand but covers its "
                       "dimension '" +
                       label + "'");
}

DataArray da_binary(const std::string &what, VarBinOp op,
                    const DataArrayConstView &a, const DataArrayConstView &b) {
  for (const auto &[name, ca] : a.coords()) {
    const auto it = b.coords().find(name);
    if (it != b.coords().end()) {
      if (!equals(ca, it->second))
        throw CoordError(what + ": coordinate '" + name +
                         "' does not match between operands");
    } else {
      check_one_sided_coord(what, name, ca, b.dims());
    }
  }
  for (const auto &[name, cb] : b.coords())
    if (a.coords().find(name) == a.coords().end())
      check_one_sided_coord(what, name, cb, a.dims());

  Variable data = op(a.data(), b.data());
  std::map<std::string, Variable> coords;
  for (const auto &[name, ca] : a.coords())
    coords.emplace(name, copy(ca));
  for (const auto &[name, cb] : b.coords())
    if (!coords.count(name))
      coords.emplace(name, copy(cb));
  // Attrs survive when carried by exactly one operand or equal in both.
  std::map<std::string, Variable> attrs;
  for (const auto &[name, aa] : a.attrs()) {
    const auto it = b.attrs().find(name);
    if (it == b.attrs().end() || equals(aa, it->second))
      attrs.emplace(name, copy(aa));
  }
  for (const auto &[name, ab] : b.attrs())
    if (a.attrs().find(name) == a.attrs().end())
      attrs.emplace(name, copy(ab));
  return DataArray(std::move(data), std::move(coords), std::move(attrs));
}

using VarReduceOp = Variable (*)(const VariableConstView &,
                                 const std::string &);

DataArray da_reduce(VarReduceOp op, const DataArrayConstView &da,
                    const std::string &dim) {
  Variable data = op(da.data(), dim);
  std::map<std::string, Variable> coords;
  for (const auto &[name, c] : da.coords())
    if (!c.dims().contains(dim))
      coords.emplace(name, copy(c));
  std::map<std::string, Variable> attrs;
  for (const auto &[name, a] : da.attrs())
    if (!a.dims().contains(dim))
      attrs.emplace(name, copy(a));
  return DataArray(std::move(data), std::move(coords), std::move(attrs));
}

} // namespace

DataArray add(const DataArrayConstView &a, const DataArrayConstView &b) {
  return da_binary("add", static_cast<VarBinOp>(&add), a, b);
}

DataArray subtract(const DataArrayConstView &a, const DataArrayConstView &b) {
  return da_binary("subtract", static_cast<VarBinOp>(&subtract), a, b);
}

DataArray multiply(const DataArrayConstView &a, const DataArrayConstView &b) {
  return da_binary("multiply", static_cast<VarBinOp>(&multiply), a, b);
}

DataArray divide(const DataArrayConstView &a, const DataArrayConstView &b) {
  return da_binary("divide", static_cast<VarBinOp>(&divide), a, b);
}

DataArray sum(const DataArrayConstView &da, const std::string &dim) {
  return da_reduce(static_cast<VarReduceOp>(&sum), da, dim);
}

DataArray mean(const DataArrayConstView &da, const std::string &dim) {
  return da_reduce(static_cast<VarReduceOp>(&mean), da, dim);
}

} // namespace larr
