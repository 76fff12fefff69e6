// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/events.hpp"

#include <algorithm>
#include <utility>

#include "larr/ops.hpp"

namespace larr {

namespace {

// Concatenates the event lists of `v` across `dim` in ascending index order;
// the result drops that dim.
Variable gather_across(const Variable &v, const std::string &dim) {
  const int axis = v.dims().require(dim);
  const Dims out_dims = v.dims().erased(axis);
  const auto strides = row_major_strides(v.dims());
  const int64_t n_along = v.dims().extent(axis);
  return visit_event_dtype(v.dtype(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    auto gathered = [&](const EventStorage<T> &src) {
      EventStorage<T> out;
      out.flat.reserve(src.flat.size());
      const int64_t out_n = out_dims.volume();
      std::vector<int64_t> idx(static_cast<size_t>(out_dims.rank()), 0);
      for (int64_t flat = 0; flat < out_n; ++flat) {
        int64_t rem = flat;
        for (int p = out_dims.rank() - 1; p >= 0; --p) {
          idx[static_cast<size_t>(p)] = rem % out_dims.extent(p);
          rem /= out_dims.extent(p);
        }
        int64_t base = 0;
        for (int p = 0; p < out_dims.rank(); ++p)
          base += idx[static_cast<size_t>(p)] *
                  strides[static_cast<size_t>(p < axis ? p : p + 1)];
        for (int64_t j = 0; j < n_along; ++j) {
          const auto list = src.list(base + j * strides[static_cast<size_t>(axis)]);
          out.flat.insert(out.flat.end(), list.begin(), list.end());
        }
        out.offsets.push_back(static_cast<int64_t>(out.flat.size()));
      }
      return Storage(std::move(out));
    };
    std::optional<Storage> vars;
    if (v.has_variances())
      vars = gathered(v.event_variances<T>());
    return Variable(out_dims, v.unit(), gathered(v.event_values<T>()),
                    std::move(vars));
  });
}

// Per-element list concatenation: out list i = a list i ++ b list i.
template <class T>
Storage appended_lists(const EventStorage<T> &a, const EventStorage<T> &b) {
  EventStorage<T> out;
  const int64_t n = a.list_count();
  out.flat.reserve(a.flat.size() + b.flat.size());
  out.offsets.reserve(static_cast<size_t>(n) + 1);
  for (int64_t i = 0; i < n; ++i) {
    const auto la = a.list(i);
    const auto lb = b.list(i);
    out.flat.insert(out.flat.end(), la.begin(), la.end());
    out.flat.insert(out.flat.end(), lb.begin(), lb.end());
    out.offsets.push_back(static_cast<int64_t>(out.flat.size()));
  }
  return Storage(std::move(out));
}

} // namespace

DataArray histogram(const DataArrayConstView &da,
                    const VariableConstView &edges_view) {
  DataArray src = copy(da);
  Variable edges = copy(edges_view);

  if (edges.dims().rank() != 1)
    throw EdgesError("histogram: edges must be 1-D, got " +
                     edges.dims().to_string());
  const std::string dim = edges.dims().label(0);
  const int64_t n_edges = edges.dims().extent(0);
  if (n_edges < 2)
    throw EdgesError("histogram: need at least 2 edges along '" + dim +
                     "', got " + std::to_string(n_edges));
  if (edges.dtype() != DType::Float64)
    throw TypeError("histogram: edges must be float64, got " +
                    std::string(to_string(edges.dtype())));
  const auto ev = edges.values<double>();
  for (int64_t i = 1; i < n_edges; ++i)
    if (!(ev[i] > ev[i - 1]))
      throw EdgesError("histogram: edges must be strictly increasing, but "
                       "edge " + std::to_string(i) + " is not");

  if (src.data().dtype() != DType::EventListFloat64)
    throw TypeError("histogram: data must be float64 event lists, got " +
                    std::string(to_string(src.data().dtype())));
  if (src.dims().contains(dim))
    throw DimsError("histogram: dim '" + dim + "' is already dense in the data");
  if (!src.has_coord(dim))
    throw CoordError("histogram: no event coordinate '" + dim + "'");
  const Variable &coord = src.coord(dim);
  if (coord.dtype() != DType::EventListFloat64)
    throw TypeError("histogram: coordinate '" + dim +
                    "' must be float64 event lists, got " +
                    std::string(to_string(coord.dtype())));
  if (coord.unit() != edges.unit())
    throw UnitError("histogram: coordinate unit " + to_string(coord.unit()) +
                    " does not match edges unit " + to_string(edges.unit()));

  const int64_t nb = n_edges - 1;
  const auto &pos = coord.event_values<double>();
  const auto &wgt = src.data().event_values<double>();
  const EventStorage<double> *wvar =
      src.data().has_variances() ? &src.data().event_variances<double>()
                                 : nullptr;

  Dims out_dims = src.dims();
  out_dims.push_back(dim, nb);
  Buffer<double> vals(out_dims.volume());
  Buffer<double> vars(out_dims.volume());
  const auto vspan = vals.span();
  const auto varspan = vars.span();
  const int64_t n_lists = src.data().volume();
  for (int64_t i = 0; i < n_lists; ++i) {
    const auto xs = pos.list(i);
    const auto ws = wgt.list(i);
    for (size_t k = 0; k < xs.size(); ++k) {
      // Half-open bins [e_b, e_{b+1}); events outside the edge range vanish.
      const int64_t b = (std::upper_bound(ev.begin(), ev.end(), xs[k]) -
                         ev.begin()) - 1;
      if (b < 0 || b >= nb)
        continue;
      vspan[static_cast<size_t>(i * nb + b)] += ws[k];
      // Without stored weight variances the bin is Poisson-like: its variance
      // is the summed weight (= count for unit weights).
      varspan[static_cast<size_t>(i * nb + b)] +=
          wvar ? wvar->list(i)[k] : ws[k];
    }
  }
  Variable out_data(out_dims, src.data().unit(), std::move(vals),
                    Storage(std::move(vars)));

  std::map<std::string, Variable> coords;
  for (const auto &entry : src.coords())
    if (!is_event(entry.second.dtype()))
      coords.emplace(entry.first, entry.second);
  coords.insert_or_assign(dim, std::move(edges));
  return DataArray(std::move(out_data), std::move(coords), src.attrs());
}

DataArray flatten(const DataArrayConstView &da, const std::string &dim) {
  DataArray src = copy(da);
  if (!is_event(src.data().dtype()))
    throw TypeError("flatten: data must hold event lists, got " +
                    std::string(to_string(src.data().dtype())));
  src.dims().require(dim);

  Variable out_data = gather_across(src.data(), dim);
  std::map<std::string, Variable> coords;
  for (const auto &entry : src.coords()) {
    if (is_event(entry.second.dtype()))
      coords.emplace(entry.first, gather_across(entry.second, dim));
    else if (!entry.second.dims().contains(dim))
      coords.emplace(entry.first, entry.second);
  }
  std::map<std::string, Variable> attrs;
  for (const auto &entry : src.attrs())
    if (!entry.second.dims().contains(dim))
      attrs.emplace(entry.first, entry.second);
  return DataArray(std::move(out_data), std::move(coords), std::move(attrs));
}

DataArray event_concatenate(const DataArrayConstView &a,
                            const DataArrayConstView &b) {
  DataArray ca = copy(a);
  DataArray cb = copy(b);
  if (!is_event(ca.data().dtype()) || !is_event(cb.data().dtype()))
    throw TypeError("event_concatenate: both operands must hold event lists");
  if (ca.dims() != cb.dims())
    throw ShapeError("event_concatenate: dims " + ca.dims().to_string() +
                     " and " + cb.dims().to_string() + " do not match");
  if (ca.data().dtype() != cb.data().dtype())
    throw TypeError("event_concatenate: dtypes " +
                    std::string(to_string(ca.data().dtype())) + " and " +
                    std::string(to_string(cb.data().dtype())) +
                    " do not match");
  if (ca.unit() != cb.unit())
    throw UnitError("event_concatenate: units " + to_string(ca.unit()) +
                    " and " + to_string(cb.unit()) + " do not match");
  if (ca.data().has_variances() != cb.data().has_variances())
    throw TypeError("event_concatenate: one operand has variances, the other "
                    "does not");

  for (const auto &entry : ca.coords())
    if (!cb.has_coord(entry.first))
      throw CoordError("event_concatenate: coordinate '" + entry.first +
                       "' missing from right operand");
  for (const auto &entry : cb.coords())
    if (!ca.has_coord(entry.first))
      throw CoordError("event_concatenate: coordinate '" + entry.first +
                       "' missing from left operand");

  std::map<std::string, Variable> coords;
  for (const auto &entry : ca.coords()) {
    const std::string &name = entry.first;
    const Variable &lc = entry.second;
    const Variable &rc = cb.coord(name);
    if (is_event(lc.dtype()) != is_event(rc.dtype()))
      throw CoordError("event_concatenate: coordinate '" + name +
                       "' is an event list in only one operand");
    if (!is_event(lc.dtype())) {
      if (!equals(lc, rc))
        throw CoordError("event_concatenate: dense coordinate '" + name +
                         "' differs between operands");
      coords.emplace(name, lc);
      continue;
    }
    if (lc.dtype() != rc.dtype() || lc.unit() != rc.unit() ||
        lc.has_variances() != rc.has_variances())
      throw CoordError("event_concatenate: event coordinate '" + name +
                       "' differs in dtype, unit, or variances");
    coords.emplace(name, visit_event_dtype(lc.dtype(), [&](auto tag) {
      using T = typename decltype(tag)::type;
      std::optional<Storage> vars;
      if (lc.has_variances())
        vars = appended_lists(lc.event_variances<T>(), rc.event_variances<T>());
      return Variable(lc.dims(), lc.unit(),
                      appended_lists(lc.event_values<T>(), rc.event_values<T>()),
                      std::move(vars));
    }));
  }

  Variable out_data = visit_event_dtype(ca.data().dtype(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    std::optional<Storage> vars;
    if (ca.data().has_variances())
      vars = appended_lists(ca.data().event_variances<T>(),
                            cb.data().event_variances<T>());
    return Variable(ca.dims(), ca.unit(),
                    appended_lists(ca.data().event_values<T>(),
                                   cb.data().event_values<T>()),
                    std::move(vars));
  });

  // Attrs survive when unique to one operand or equal in both.
  std::map<std::string, Variable> attrs;
  for (const auto &entry : ca.attrs()) {
    const auto it = cb.attrs().find(entry.first);
    if (it == cb.attrs().end() || equals(entry.second, it->second))
      attrs.emplace(entry.first, entry.second);
  }
  for (const auto &entry : cb.attrs())
    if (!ca.has_attr(entry.first))
      attrs.emplace(entry.first, entry.second);

  return DataArray(std::move(out_data), std::move(coords), std::move(attrs));
}

DataArray event_dense_op(const DataArrayConstView &da,
                         const VariableConstView &dense, BinaryOp op,
                         const std::string &target) {
  DataArray src = copy(da);
  const bool on_data = target == "data";
  if (!on_data && !src.has_coord(target))
    throw KeyError("event_dense_op: no coordinate '" + target + "'");
  const Variable &tgt = on_data ? src.data() : src.coord(target);
  if (!is_event(tgt.dtype()))
    throw TypeError("event_dense_op: target '" + target +
                    "' holds dense data, not event lists");
  if (is_event(dense.dtype()))
    throw TypeError("event_dense_op: operand must be dense");
  Variable result = [&] {
    switch (op) {
    case BinaryOp::Add:
      return add(tgt, dense);
    case BinaryOp::Subtract:
      return subtract(tgt, dense);
    case BinaryOp::Multiply:
      return multiply(tgt, dense);
    case BinaryOp::Divide:
      return divide(tgt, dense);
    }
    throw Error("event_dense_op: bad op");
  }();
  if (on_data)
    return DataArray(std::move(result), src.coords(), src.attrs());
  src.set_coord(target, std::move(result));
  return src;
}

} // namespace larr
