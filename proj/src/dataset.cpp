// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/dataset.hpp"

#include <utility>

#include "larr/ops.hpp"

namespace larr {

// Does this shared coord describe (part of) an item with the given data?
bool coord_fits(const Variable &coord, const Variable &data) {
  if (is_event(coord.dtype())) {
    return is_event(data.dtype()) && coord.dims() == data.dims() &&
           event_offsets(coord) == event_offsets(data);
  }
  const Dims &cd = coord.dims();
  const Dims &dd = data.dims();
  for (int i = 0; i < cd.rank(); ++i) {
    if (!dd.contains(cd.label(i)))
      return false;
    const int64_t want = dd.extent(cd.label(i));
    const int64_t got = cd.extent(i);
    if (got != want && !(i == cd.rank() - 1 && got == want + 1))
      return false;
  }
  return true;
}

std::map<std::string, int64_t> Dataset::data_extents() const {
  std::map<std::string, int64_t> extents;
  for (const auto &[name, item] : items_) {
    const Dims &d = item.data.dims();
    for (int i = 0; i < d.rank(); ++i) {
      const auto [it, inserted] = extents.emplace(d.label(i), d.extent(i));
      if (!inserted && it->second != d.extent(i))
        throw AlignmentError("item '" + name + "' has extent " +
                             std::to_string(d.extent(i)) + " along '" +
                             d.label(i) + "' but the set has " +
                             std::to_string(it->second));
    }
  }
  return extents;
}

void Dataset::check_coord_against(
    const std::map<std::string, int64_t> &extents, const std::string &name,
    const Variable &coord) const {
  if (is_event(coord.dtype()))
    return; // validated against whichever event item it fits via get()
  const Dims &cd = coord.dims();
  for (int i = 0; i < cd.rank(); ++i) {
    const auto it = extents.find(cd.label(i));
    if (it == extents.end())
      continue; // coord-only dims carry no alignment obligation
    const int64_t want = it->second;
    const int64_t got = cd.extent(i);
    if (got != want && !(i == cd.rank() - 1 && got == want + 1))
      throw AlignmentError("coordinate '" + name + "' extent " +
                           std::to_string(got) + " along '" + cd.label(i) +
                           "' does not align with the set's " +
                           std::to_string(want));
  }
}

void Dataset::validate() const {
  const auto extents = data_extents();
  for (const auto &[name, coord] : coords_)
    check_coord_against(extents, name, coord);
  // Per-item invariants (coord fit, event rules, attr extents) re-checked by
  // materializing each item as a DataArray.
  for (const auto &entry : items_)
    (void)copy(get(entry.first));
}

void Dataset::set(const std::string &name, DataArray da) {
  Dataset candidate(*this);
  for (const auto &[cname, coord] : da.coords()) {
    const auto it = candidate.coords_.find(cname);
    if (it != candidate.coords_.end()) {
      if (it->second != coord)
        throw CoordError("coordinate '" + cname +
                         "' conflicts with the set's shared coordinate");
    } else {
      candidate.coords_.emplace(cname, coord);
    }
  }
  candidate.items_.insert_or_assign(
      name, Item{da.data(), da.attrs()});
  candidate.validate();
  *this = std::move(candidate);
}

DataArrayConstView Dataset::get(const std::string &name) const {
  const auto it = items_.find(name);
  if (it == items_.end())
    throw KeyError("no item '" + name + "'");
  std::map<std::string, VariableConstView> coords;
  for (const auto &[cname, coord] : coords_)
    if (coord_fits(coord, it->second.data))
      coords.emplace(cname, VariableConstView(coord));
  std::map<std::string, VariableConstView> attrs;
  for (const auto &[aname, attr] : it->second.attrs)
    attrs.emplace(aname, VariableConstView(attr));
  return {VariableConstView(it->second.data), std::move(coords),
          std::move(attrs)};
}

DataArrayView Dataset::get(const std::string &name) {
  const auto it = items_.find(name);
  if (it == items_.end())
    throw KeyError("no item '" + name + "'");
  std::map<std::string, VariableConstView> coords;
  for (const auto &[cname, coord] : coords_)
    if (coord_fits(coord, it->second.data))
      coords.emplace(cname, VariableConstView(coord));
  std::map<std::string, VariableConstView> attrs;
  for (const auto &[aname, attr] : it->second.attrs)
    attrs.emplace(aname, VariableConstView(attr));
  return {VariableView(it->second.data), std::move(coords), std::move(attrs)};
}

void Dataset::erase(const std::string &name) {
  if (!items_.erase(name))
    throw KeyError("no item '" + name + "'");
}

std::vector<std::string> Dataset::names() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto &[name, item] : items_)
    out.push_back(name);
  return out;
}

void Dataset::set_coord(const std::string &name, Variable coord) {
  check_coord_against(data_extents(), name, coord);
  coords_.insert_or_assign(name, std::move(coord));
}

bool Dataset::operator==(const Dataset &other) const {
  return coords_ == other.coords_ && items_ == other.items_;
}

namespace {

using VarBinOp = Variable (*)(const VariableConstView &,
                              const VariableConstView &);

Dataset ds_binary(const std::string &what, VarBinOp op, const Dataset &a,
                  const Dataset &b) {
  for (const auto &[name, ca] : a.coords()) {
    const auto it = b.coords().find(name);
    if (it != b.coords().end() && ca != it->second)
      throw CoordError(what + ": coordinate '" + name +
                       "' does not match between datasets");
  }
  Dataset out;
  for (const auto &[name, ca] : a.coords())
    out.set_coord(name, ca);
  for (const auto &[name, cb] : b.coords())
    if (!out.coords().count(name))
      out.set_coord(name, cb);
  for (const auto &name : a.names()) {
    if (!b.has(name))
      continue;
    const DataArrayConstView ia = a.get(name);
    const DataArrayConstView ib = b.get(name);
    Variable data = op(ia.data(), ib.data());
    std::map<std::string, Variable> attrs;
    for (const auto &[aname, aa] : ia.attrs()) {
      const auto it = ib.attrs().find(aname);
      if (it == ib.attrs().end() || equals(aa, it->second))
        attrs.emplace(aname, copy(aa));
    }
    for (const auto &[aname, ab] : ib.attrs())
      if (ia.attrs().find(aname) == ia.attrs().end())
        attrs.emplace(aname, copy(ab));
    std::map<std::string, Variable> coords;
    for (const auto &[cname, coord] : out.coords())
      if (coord_fits(coord, data))
        coords.emplace(cname, coord);
    out.set(name, DataArray(std::move(data), std::move(coords),
                            std::move(attrs)));
  }
  return out;
}

} // namespace

Dataset add(const Dataset &a, const Dataset &b) {
  return ds_binary("add", static_cast<VarBinOp>(&add), a, b);
}

Dataset subtract(const Dataset &a, const Dataset &b) {
  return ds_binary("subtract", static_cast<VarBinOp>(&subtract), a, b);
}

Dataset multiply(const Dataset &a, const Dataset &b) {
  return ds_binary("multiply", static_cast<VarBinOp>(&multiply), a, b);
}

Dataset divide(const Dataset &a, const Dataset &b) {
  return ds_binary("divide", static_cast<VarBinOp>(&divide), a, b);
}

} // namespace larr
