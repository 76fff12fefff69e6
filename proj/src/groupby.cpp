// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/groupby.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "larr/ops.hpp"

namespace larr {

namespace {

// Shared precondition checks; returns the materialized grouping coord's dim.
std::string check_group_coord(const DataArray &src,
                              const std::string &coord_name) {
  if (!src.has_coord(coord_name))
    throw CoordError("groupby: no coordinate '" + coord_name + "'");
  const Variable &coord = src.coord(coord_name);
  if (is_event(coord.dtype()))
    throw UnsupportedError("groupby: cannot group by event coordinate '" +
                           coord_name + "'");
  if (coord.dims().rank() != 1)
    throw UnsupportedError("groupby: coordinate '" + coord_name +
                           "' must be 1-D, got " + coord.dims().to_string());
  const std::string dim = coord.dims().label(0);
  if (coord.dims().extent(0) != src.dims().extent(dim))
    throw UnsupportedError("groupby: cannot group by bin-edge coordinate '" +
                           coord_name + "'");
  return dim;
}

} // namespace

GroupBy groupby(const DataArrayConstView &da, const std::string &coord_name) {
  DataArray src = copy(da);
  const std::string dim = check_group_coord(src, coord_name);
  const Variable &coord = src.coord(coord_name);
  const int64_t n = coord.dims().extent(0);

  return visit_dense_dtype(coord.dtype(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    const auto vals = coord.values<T>();
    std::vector<T> keys;
    std::vector<std::vector<int64_t>> groups;
    for (int64_t r = 0; r < n; ++r) {
      size_t g = 0;
      for (; g < keys.size(); ++g)
        if (bitwise_equal<T>(keys[g], vals[r]))
          break;
      if (g == keys.size()) {
        keys.push_back(vals[r]);
        groups.emplace_back();
      }
      groups[g].push_back(r);
    }
    const int64_t n_keys = static_cast<int64_t>(keys.size());
    Variable key = make_variable<T>(Dims{{coord_name, n_keys}}, coord.unit(),
                                    std::move(keys));
    return GroupBy(std::move(src), coord_name, dim, std::move(groups),
                   std::move(key), false);
  });
}

GroupBy groupby(const DataArrayConstView &da, const std::string &coord_name,
                const VariableConstView &bins_view) {
  DataArray src = copy(da);
  const std::string dim = check_group_coord(src, coord_name);
  const Variable &coord = src.coord(coord_name);
  Variable bins = copy(bins_view);

  if (bins.dims().rank() != 1)
    throw EdgesError("groupby: bins must be 1-D, got " +
                     bins.dims().to_string());
  if (bins.dims().label(0) != coord_name)
    throw DimsError("groupby: bins dim '" + bins.dims().label(0) +
                    "' must carry the coordinate name '" + coord_name + "'");
  const int64_t n_edges = bins.dims().extent(0);
  if (n_edges < 2)
    throw EdgesError("groupby: need at least 2 bin edges, got " +
                     std::to_string(n_edges));
  if (bins.dtype() != coord.dtype())
    throw TypeError("groupby: bins dtype " +
                    std::string(to_string(bins.dtype())) +
                    " does not match coordinate dtype " +
                    std::string(to_string(coord.dtype())));
  if (bins.dtype() == DType::Bool || bins.dtype() == DType::String)
    throw TypeError("groupby: cannot bin " +
                    std::string(to_string(bins.dtype())) + " values");
  if (bins.unit() != coord.unit())
    throw UnitError("groupby: bins unit " + to_string(bins.unit()) +
                    " does not match coordinate unit " +
                    to_string(coord.unit()));

  const int64_t n = coord.dims().extent(0);
  std::vector<std::vector<int64_t>> groups(static_cast<size_t>(n_edges - 1));
  visit_dense_dtype(coord.dtype(), [&](auto tag) {
    using T = typename decltype(tag)::type;
    if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::string>)
      return; // unreachable: rejected above
    else {
      const auto edges = bins.values<T>();
      for (int64_t i = 1; i < n_edges; ++i)
        if (!(edges[i] > edges[i - 1]))
          throw EdgesError("groupby: bin edges must be strictly increasing, "
                           "but edge " + std::to_string(i) + " is not");
      const auto vals = coord.values<T>();
      for (int64_t r = 0; r < n; ++r) {
        const int64_t b = (std::upper_bound(edges.begin(), edges.end(),
                                            vals[r]) - edges.begin()) - 1;
        if (b >= 0 && b < n_edges - 1)
          groups[static_cast<size_t>(b)].push_back(r);
      }
    }
  });
  return GroupBy(std::move(src), coord_name, dim, std::move(groups),
                 std::move(bins), true);
}

Dims GroupBy::output_dims(const Dims &in) const {
  const int axis = in.require(reduced_);
  Dims out;
  for (int d = 0; d < in.rank(); ++d) {
    if (d == axis)
      out.push_back(name_, n_groups());
    else
      out.push_back(in.label(d), in.extent(d));
  }
  return out;
}

DataArray GroupBy::sum() const {
  const Variable &data = source_.data();
  if (is_event(data.dtype()))
    throw TypeError("groupby sum: data holds event lists; use flatten");
  const Dims out_dims = output_dims(data.dims());

  Variable out = visit_dense_dtype(data.dtype(), [&](auto tag) -> Variable {
    using T = typename decltype(tag)::type;
    if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::string>) {
      throw TypeError("groupby sum: cannot sum " +
                      std::string(to_string(data.dtype())) + " data");
    } else {
      std::optional<Storage> vars;
      if (data.has_variances())
        vars = Buffer<T>(out_dims.volume());
      return Variable(out_dims, data.unit(), Buffer<T>(out_dims.volume()),
                      std::move(vars));
    }
  });
  for (int64_t g = 0; g < n_groups(); ++g) {
    auto target = out.slice_point(name_, g);
    for (const int64_t r : groups_[static_cast<size_t>(g)])
      add_in_place(target, source_.data().slice_point(reduced_, r));
  }

  std::map<std::string, Variable> coords;
  for (const auto &entry : source_.coords())
    if (!entry.second.dims().contains(reduced_))
      coords.emplace(entry.first, entry.second);
  coords.insert_or_assign(name_, key_);
  std::map<std::string, Variable> attrs;
  for (const auto &entry : source_.attrs())
    if (!entry.second.dims().contains(reduced_))
      attrs.emplace(entry.first, entry.second);
  return DataArray(std::move(out), std::move(coords), std::move(attrs));
}

DataArray GroupBy::mean() const {
  const DType d = source_.data().dtype();
  if (d != DType::Float64 && d != DType::Float32)
    throw TypeError("groupby mean: data must be floating point, got " +
                    std::string(to_string(d)));
  DataArray s = sum();
  // Dividing by exact counts scales variances by 1/n^2; empty bins hit 0/0
  // and come out NaN.
  Variable counts = visit_dense_dtype(d, [&](auto tag) -> Variable {
    using T = typename decltype(tag)::type;
    if constexpr (std::is_floating_point_v<T>) {
      std::vector<T> c(groups_.size());
      for (size_t g = 0; g < groups_.size(); ++g)
        c[g] = static_cast<T>(groups_[g].size());
      return make_variable<T>(Dims{{name_, n_groups()}},
                              Unit::dimensionless(), std::move(c));
    } else {
      throw TypeError("groupby mean: data must be floating point");
    }
  });
  Variable data = divide(s.data(), counts);
  return DataArray(std::move(data), s.coords(), s.attrs());
}

DataArray GroupBy::flatten() const {
  if (!is_event(source_.data().dtype()))
    throw TypeError("groupby flatten: data is dense; use sum or mean");

  // Concatenates each group's member lists in ascending row order.
  auto gather_groups = [&](const Variable &v) {
    const int axis = v.dims().require(reduced_);
    const Dims out_dims = output_dims(v.dims());
    const auto strides = row_major_strides(v.dims());
    return visit_event_dtype(v.dtype(), [&](auto tag) {
      using T = typename decltype(tag)::type;
      auto run = [&](const EventStorage<T> &src) {
        EventStorage<T> out;
        out.flat.reserve(src.flat.size());
        std::vector<int64_t> idx(static_cast<size_t>(out_dims.rank()), 0);
        const int64_t out_n = out_dims.volume();
        for (int64_t flat = 0; flat < out_n; ++flat) {
          int64_t rem = flat;
          for (int p = out_dims.rank() - 1; p >= 0; --p) {
            idx[static_cast<size_t>(p)] = rem % out_dims.extent(p);
            rem /= out_dims.extent(p);
          }
          int64_t base = 0;
          for (int p = 0; p < out_dims.rank(); ++p)
            if (p != axis)
              base += idx[static_cast<size_t>(p)] *
                      strides[static_cast<size_t>(p)];
          for (const int64_t r : groups_[static_cast<size_t>(idx[
                   static_cast<size_t>(axis)])]) {
            const auto list =
                src.list(base + r * strides[static_cast<size_t>(axis)]);
            out.flat.insert(out.flat.end(), list.begin(), list.end());
          }
          out.offsets.push_back(static_cast<int64_t>(out.flat.size()));
        }
        return Storage(std::move(out));
      };
      std::optional<Storage> vars;
      if (v.has_variances())
        vars = run(v.event_variances<T>());
      return Variable(out_dims, v.unit(), run(v.event_values<T>()),
                      std::move(vars));
    });
  };

  Variable out_data = gather_groups(source_.data());
  std::map<std::string, Variable> coords;
  for (const auto &entry : source_.coords()) {
    if (is_event(entry.second.dtype()))
      coords.emplace(entry.first, gather_groups(entry.second));
    else if (!entry.second.dims().contains(reduced_))
      coords.emplace(entry.first, entry.second);
  }
  coords.insert_or_assign(name_, key_);
  std::map<std::string, Variable> attrs;
  for (const auto &entry : source_.attrs())
    if (!entry.second.dims().contains(reduced_))
      attrs.emplace(entry.first, entry.second);
  return DataArray(std::move(out_data), std::move(coords), std::move(attrs));
}

} // namespace larr
