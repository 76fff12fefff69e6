// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/render.hpp"

#include <cstdlib>
#include <map>
#include <vector>

#include "larr/io.hpp"
#include "larr/ops.hpp"

namespace larr {

namespace {

bool use_color() { return std::getenv("LARR_NO_COLOR") == nullptr; }

std::string bold(const std::string &s) {
  return use_color() ? "\x1b[1m" + s + "\x1b[0m" : s;
}

std::string dims_text(const Dims &d) {
  std::string s = "(";
  for (int i = 0; i < d.rank(); ++i) {
    if (i)
      s += ", ";
    s += d.label(i) + ": " + std::to_string(d.extent(i));
  }
  return s + ")";
}

std::string unit_text(const Unit &u) { return "[" + to_string(u) + "]"; }

// A dense coord whose inner dim runs one element past the data extent.
bool is_edge_coord(const Variable &coord, const std::map<std::string, int64_t> &extents) {
  if (is_event(coord.dtype()) || coord.dims().rank() == 0)
    return false;
  const Dims &cd = coord.dims();
  const auto it = extents.find(cd.label(cd.rank() - 1));
  return it != extents.end() && cd.extent(cd.rank() - 1) == it->second + 1;
}

struct Row {
  std::string indent, name, dtype, unit, dims, flags;
};

void emit_rows(std::string &out, const std::vector<Row> &rows) {
  size_t name_w = 0, dtype_w = 0, unit_w = 0, dims_w = 0;
  for (const Row &r : rows) {
    name_w = std::max(name_w, r.indent.size() + r.name.size());
    dtype_w = std::max(dtype_w, r.dtype.size());
    unit_w = std::max(unit_w, r.unit.size());
    dims_w = std::max(dims_w, r.dims.size());
  }
  for (const Row &r : rows) {
    if (r.dtype.empty()) { // section heading
      out += r.indent + r.name + "\n";
      continue;
    }
    std::string line = r.indent + r.name;
    line.append(name_w - r.indent.size() - r.name.size() + 2, ' ');
    line += r.dtype;
    line.append(dtype_w - r.dtype.size() + 2, ' ');
    line += r.unit;
    line.append(unit_w - r.unit.size() + 2, ' ');
    line += r.dims;
    if (!r.flags.empty()) {
      line.append(dims_w - r.dims.size() + 2, ' ');
      line += r.flags;
    }
    while (!line.empty() && line.back() == ' ')
      line.pop_back();
    out += line + "\n";
  }
}

Row variable_row(std::string indent, std::string name, const Variable &v,
                 const std::map<std::string, int64_t> &extents) {
  std::string flags;
  if (is_edge_coord(v, extents))
    flags = "bin-edges";
  if (v.has_variances())
    flags += flags.empty() ? "variances" : "  variances";
  return {std::move(indent), std::move(name), std::string(to_string(v.dtype())),
          unit_text(v.unit()), dims_text(v.dims()), std::move(flags)};
}

std::map<std::string, int64_t> extents_of(const Dims &d) {
  std::map<std::string, int64_t> out;
  for (int i = 0; i < d.rank(); ++i)
    out.emplace(d.label(i), d.extent(i));
  return out;
}

} // namespace

std::string render_structure(const DataArrayConstView &view) {
  const DataArray da = copy(view);
  const auto extents = extents_of(da.data().dims());
  std::vector<Row> rows;
  rows.push_back(variable_row("  ", "data", da.data(), extents));
  if (!da.coords().empty()) {
    rows.push_back({"  ", "coords:", "", "", "", ""});
    for (const auto &[name, coord] : da.coords())
      rows.push_back(variable_row("    ", name, coord, extents));
  }
  if (!da.attrs().empty()) {
    rows.push_back({"  ", "attrs:", "", "", "", ""});
    for (const auto &[name, attr] : da.attrs())
      rows.push_back(variable_row("    ", name, attr, extents));
  }
  std::string out = bold("DataArray " + dims_text(da.data().dims())) + "\n";
  emit_rows(out, rows);
  return out;
}

std::string render_structure(const Dataset &ds) {
  std::map<std::string, int64_t> extents;
  for (const auto &[name, item] : ds.items()) {
    const Dims &d = item.data.dims();
    for (int i = 0; i < d.rank(); ++i)
      extents.emplace(d.label(i), d.extent(i));
  }
  std::string all = "(";
  for (const auto &[label, extent] : extents) {
    if (all.size() > 1)
      all += ", ";
    all += label + ": " + std::to_string(extent);
  }
  all += ")";
  std::vector<Row> rows;
  if (!ds.coords().empty()) {
    rows.push_back({"  ", "coords:", "", "", "", ""});
    for (const auto &[name, coord] : ds.coords())
      rows.push_back(variable_row("    ", name, coord, extents));
  }
  if (!ds.items().empty()) {
    rows.push_back({"  ", "items:", "", "", "", ""});
    for (const auto &[name, item] : ds.items()) {
      rows.push_back(variable_row("    ", name, item.data, extents));
      for (const auto &[aname, attr] : item.attrs)
        rows.push_back(variable_row("      ", aname + " (attr)", attr, extents));
    }
  }
  std::string out = bold("Dataset " + all) + "  " + std::to_string(ds.size()) +
                    (ds.size() == 1 ? " item\n" : " items\n");
  emit_rows(out, rows);
  return out;
}

namespace {

std::string cell_text(const Variable &v, int64_t i, bool variance) {
  return visit_dense_dtype(v.dtype(), [&](auto tag) -> std::string {
    using T = typename decltype(tag)::type;
    const T &x = variance ? v.variances<T>()[i] : v.values<T>()[i];
    if constexpr (std::is_same_v<T, double>)
      return format_double(x);
    else if constexpr (std::is_same_v<T, float>)
      return format_float(x);
    else if constexpr (std::is_same_v<T, bool>)
      return x ? "true" : "false";
    else if constexpr (std::is_same_v<T, std::string>)
      return x;
    else
      return std::to_string(x);
  });
}

struct Column {
  std::string header;
  std::vector<std::string> cells;
};

} // namespace

std::string render_table(const DataArrayConstView &view) {
  if (is_event(view.data().dtype()))
    throw UnsupportedError("cannot tabulate event data; histogram it first");
  if (view.dims().rank() > 1)
    throw UnsupportedError("tables are defined for rank 0 or 1 data, got " +
                           dims_text(view.dims()));
  const DataArray da = copy(view);
  const int64_t n = da.dims().rank() == 0 ? 1 : da.dims().extent(0);
  const auto extents = extents_of(da.dims());

  std::vector<Column> cols;
  for (const auto &[name, coord] : da.coords()) {
    // Scalar coords do not vary along the table; the structure render has
    // them.
    if (coord.dims().rank() == 0 || da.dims().rank() == 0)
      continue;
    Column col{name + " " + unit_text(coord.unit()), {}};
    if (is_edge_coord(coord, extents)) {
      for (int64_t i = 0; i < n; ++i)
        col.cells.push_back("[" + cell_text(coord, i, false) + ", " +
                            cell_text(coord, i + 1, false) + ")");
    } else {
      for (int64_t i = 0; i < n; ++i)
        col.cells.push_back(cell_text(coord, i, false));
    }
    cols.push_back(std::move(col));
  }
  Column values{"value " + unit_text(da.data().unit()), {}};
  for (int64_t i = 0; i < n; ++i)
    values.cells.push_back(cell_text(da.data(), i, false));
  cols.push_back(std::move(values));
  if (da.data().has_variances()) {
    Column variances{"variance " + unit_text(da.data().unit() * da.data().unit()), {}};
    for (int64_t i = 0; i < n; ++i)
      variances.cells.push_back(cell_text(da.data(), i, true));
    cols.push_back(std::move(variances));
  }

  std::string out;
  for (size_t c = 0; c < cols.size(); ++c) {
    size_t w = cols[c].header.size();
    for (const auto &cell : cols[c].cells)
      w = std::max(w, cell.size());
    cols[c].header.append(w - cols[c].header.size(), ' ');
    for (auto &cell : cols[c].cells)
      cell.append(w - cell.size(), ' ');
  }
  auto emit_line = [&](auto get) {
    std::string line;
    for (size_t c = 0; c < cols.size(); ++c) {
      if (c)
        line += "  ";
      line += get(cols[c]);
    }
    while (!line.empty() && line.back() == ' ')
      line.pop_back();
    out += line + "\n";
  };
  emit_line([&](const Column &c) { return bold(c.header); });
  for (int64_t i = 0; i < n; ++i)
    emit_line([&](const Column &c) { return c.cells[static_cast<size_t>(i)]; });
  return out;
}

} // namespace larr
