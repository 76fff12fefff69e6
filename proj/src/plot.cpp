// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <vector>

#include "larr/io.hpp"
#include "larr/ops.hpp"

namespace larr {

namespace {

// Pixel coordinates: fixed two decimals keeps the SVG byte-stable.
std::string px(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

// Tick labels: %g keeps them short; full precision lives in the CSV.
std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string &s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

std::vector<double> as_doubles(const Variable &v, bool variance) {
  return visit_dense_dtype(v.dtype(), [&](auto tag) -> std::vector<double> {
    using T = typename decltype(tag)::type;
    if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, std::string>) {
      throw UnsupportedError("cannot plot " + std::string(to_string(v.dtype())) + " data");
    } else {
      const auto span = variance ? v.variances<T>() : v.values<T>();
      return std::vector<double>(span.begin(), span.end());
    }
  });
}

// Axis values along one dim: the dim coord when present, else the first
// 1-D numeric coord over that dim, else plain indices.
struct Axis {
  std::string name;   // coord name (or "index")
  std::string unit;   // formatted unit
  std::vector<double> values;
  bool edges = false;
};

Axis axis_for(const DataArray &da, int dim_index) {
  const std::string dim = da.dims().label(dim_index);
  const int64_t n = da.dims().extent(dim_index);
  auto usable = [&](const Variable &c) {
    return !is_event(c.dtype()) && c.dtype() != DType::Bool &&
           c.dtype() != DType::String && c.dims().rank() == 1 &&
           c.dims().label(0) == dim;
  };
  const Variable *coord = nullptr;
  std::string name;
  if (const auto it = da.coords().find(dim); it != da.coords().end() && usable(it->second)) {
    coord = &it->second;
    name = it->first;
  } else {
    for (const auto &[cname, c] : da.coords())
      if (usable(c)) {
        coord = &c;
        name = cname;
        break;
      }
  }
  if (!coord) {
    Axis ax{"index", "dimensionless", {}, false};
    ax.values.resize(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i)
      ax.values[static_cast<size_t>(i)] = static_cast<double>(i);
    return ax;
  }
  return {name, to_string(coord->unit()), as_doubles(*coord, false),
          coord->dims().extent(0) == n + 1};
}

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range finite_range(const std::vector<double> &lo_vals, const std::vector<double> &hi_vals) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const double v : lo_vals)
    if (std::isfinite(v))
      r.lo = std::min(r.lo, v);
  for (const double v : hi_vals)
    if (std::isfinite(v))
      r.hi = std::max(r.hi, v);
  if (!(r.lo <= r.hi))
    return {0.0, 1.0};
  if (r.lo == r.hi) {
    r.lo -= 1.0;
    r.hi += 1.0;
  }
  return r;
}

Range pad(Range r, double frac) {
  const double m = (r.hi - r.lo) * frac;
  return {r.lo - m, r.hi + m};
}

constexpr double kW = 640, kH = 480, kML = 78, kMR = 24, kMT = 28, kMB = 56;

struct Mapper {
  Range x, y;
  double map_x(double v) const { return kML + (v - x.lo) / (x.hi - x.lo) * (kW - kML - kMR); }
  double map_y(double v) const { return kH - kMB - (v - y.lo) / (y.hi - y.lo) * (kH - kMT - kMB); }
};

void svg_header(std::string &out) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n"
         "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
}

void svg_text(std::string &out, double x, double y, const std::string &anchor,
              const std::string &s, const std::string &extra = "") {
  out += "<text x=\"" + px(x) + "\" y=\"" + px(y) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" + anchor + "\"" +
         extra + ">" + xml_escape(s) + "</text>\n";
}

void svg_axes(std::string &out, const Mapper &m, const std::string &x_label,
              const std::string &y_label, const std::string &title) {
  out += "<line x1=\"" + px(kML) + "\" y1=\"" + px(kH - kMB) + "\" x2=\"" + px(kW - kMR) +
         "\" y2=\"" + px(kH - kMB) + "\" stroke=\"#333\"/>\n";
  out += "<line x1=\"" + px(kML) + "\" y1=\"" + px(kMT) + "\" x2=\"" + px(kML) + "\" y2=\"" +
         px(kH - kMB) + "\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = m.x.lo + (m.x.hi - m.x.lo) * i / 4.0;
    const double fy = m.y.lo + (m.y.hi - m.y.lo) * i / 4.0;
    const double tx = m.map_x(fx);
    const double ty = m.map_y(fy);
    out += "<line x1=\"" + px(tx) + "\" y1=\"" + px(kH - kMB) + "\" x2=\"" + px(tx) +
           "\" y2=\"" + px(kH - kMB + 4) + "\" stroke=\"#333\"/>\n";
    svg_text(out, tx, kH - kMB + 17, "middle", tick(fx));
    out += "<line x1=\"" + px(kML - 4) + "\" y1=\"" + px(ty) + "\" x2=\"" + px(kML) +
           "\" y2=\"" + px(ty) + "\" stroke=\"#333\"/>\n";
    svg_text(out, kML - 7, ty + 4, "end", tick(fy));
  }
  svg_text(out, (kML + kW - kMR) / 2, kH - 14, "middle", x_label);
  svg_text(out, 16, (kMT + kH - kMB) / 2, "middle", y_label,
           " transform=\"rotate(-90 16 " + px((kMT + kH - kMB) / 2) + ")\"");
  svg_text(out, (kML + kW - kMR) / 2, 17, "middle", title);
}

void write_file(const std::string &text, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
}

std::string csv_header_1d(const Axis &ax, const DataArray &da, bool stddev) {
  std::string h;
  if (ax.edges)
    h = ax.name + "_low [" + ax.unit + "]," + ax.name + "_high [" + ax.unit + "]";
  else
    h = ax.name + " [" + ax.unit + "]";
  h += ",value [" + to_string(da.data().unit()) + "]";
  if (stddev)
    h += ",stddev [" + to_string(da.data().unit()) + "]";
  return h + "\n";
}

void emit_1d(const DataArray &da, const std::filesystem::path &dir, const std::string &stem) {
  const Axis ax = axis_for(da, 0);
  const std::vector<double> values = as_doubles(da.data(), false);
  const bool with_stddev = da.data().has_variances();
  std::vector<double> stddev(values.size(), 0.0);
  if (with_stddev) {
    const std::vector<double> var = as_doubles(da.data(), true);
    for (size_t i = 0; i < var.size(); ++i)
      stddev[i] = std::sqrt(var[i]);
  }
  const int64_t n = static_cast<int64_t>(values.size());

  std::string csv = csv_header_1d(ax, da, with_stddev);
  for (int64_t i = 0; i < n; ++i) {
    const size_t u = static_cast<size_t>(i);
    if (ax.edges)
      csv += format_double(ax.values[u]) + "," + format_double(ax.values[u + 1]);
    else
      csv += format_double(ax.values[u]);
    csv += "," + format_double(values[u]);
    if (with_stddev)
      csv += "," + format_double(stddev[u]);
    csv += "\n";
  }
  write_file(csv, dir / (stem + ".csv"));

  Mapper m;
  m.x = ax.edges ? finite_range(ax.values, ax.values)
                 : pad(finite_range(ax.values, ax.values), 0.05);
  std::vector<double> lo(values.size()), hi(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    lo[i] = values[i] - stddev[i];
    hi[i] = values[i] + stddev[i];
  }
  m.y = pad(finite_range(lo, hi), 0.05);

  std::string svg;
  svg_header(svg);
  svg_axes(svg, m, ax.name + " [" + ax.unit + "]",
           "value [" + to_string(da.data().unit()) + "]", stem);
  if (ax.edges) {
    // One step segment per run of finite bins.
    std::string points;
    auto flush = [&] {
      if (!points.empty())
        svg += "<polyline points=\"" + points +
               "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
      points.clear();
    };
    for (int64_t i = 0; i < n; ++i) {
      const size_t u = static_cast<size_t>(i);
      if (!std::isfinite(values[u])) {
        flush();
        continue;
      }
      const std::string y = px(m.map_y(values[u]));
      if (!points.empty())
        points += ' ';
      points += px(m.map_x(ax.values[u])) + "," + y + " " +
                px(m.map_x(ax.values[u + 1])) + "," + y;
    }
    flush();
    if (with_stddev)
      for (int64_t i = 0; i < n; ++i) {
        const size_t u = static_cast<size_t>(i);
        if (!std::isfinite(values[u]) || stddev[u] <= 0.0)
          continue;
        const double cx = m.map_x((ax.values[u] + ax.values[u + 1]) / 2.0);
        svg += "<line x1=\"" + px(cx) + "\" y1=\"" + px(m.map_y(lo[u])) + "\" x2=\"" + px(cx) +
               "\" y2=\"" + px(m.map_y(hi[u])) + "\" stroke=\"#1f77b4\"/>\n";
      }
  } else {
    for (int64_t i = 0; i < n; ++i) {
      const size_t u = static_cast<size_t>(i);
      if (!std::isfinite(values[u]) || !std::isfinite(ax.values[u]))
        continue;
      const double cx = m.map_x(ax.values[u]);
      if (with_stddev && stddev[u] > 0.0) {
        svg += "<line x1=\"" + px(cx) + "\" y1=\"" + px(m.map_y(lo[u])) + "\" x2=\"" + px(cx) +
               "\" y2=\"" + px(m.map_y(hi[u])) + "\" stroke=\"#1f77b4\"/>\n";
        svg += "<line x1=\"" + px(cx - 3) + "\" y1=\"" + px(m.map_y(lo[u])) + "\" x2=\"" +
               px(cx + 3) + "\" y2=\"" + px(m.map_y(lo[u])) + "\" stroke=\"#1f77b4\"/>\n";
        svg += "<line x1=\"" + px(cx - 3) + "\" y1=\"" + px(m.map_y(hi[u])) + "\" x2=\"" +
               px(cx + 3) + "\" y2=\"" + px(m.map_y(hi[u])) + "\" stroke=\"#1f77b4\"/>\n";
      }
      svg += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(m.map_y(values[u])) +
             "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
  }
  svg += "</svg>\n";
  write_file(svg, dir / (stem + ".svg"));
}

void emit_2d(const DataArray &da, const std::filesystem::path &dir, const std::string &stem) {
  const Axis outer = axis_for(da, 0);
  const Axis inner = axis_for(da, 1);
  const int64_t n0 = da.dims().extent(0);
  const int64_t n1 = da.dims().extent(1);
  const std::vector<double> values = as_doubles(da.data(), false);
  const bool with_stddev = da.data().has_variances();
  std::vector<double> stddev;
  if (with_stddev) {
    stddev = as_doubles(da.data(), true);
    for (auto &s : stddev)
      s = std::sqrt(s);
  }

  auto axis_cells = [](const Axis &ax, int64_t i) {
    if (ax.edges)
      return format_double(ax.values[static_cast<size_t>(i)]) + "," +
             format_double(ax.values[static_cast<size_t>(i) + 1]);
    return format_double(ax.values[static_cast<size_t>(i)]);
  };
  auto axis_header = [](const Axis &ax) {
    if (ax.edges)
      return ax.name + "_low [" + ax.unit + "]," + ax.name + "_high [" + ax.unit + "]";
    return ax.name + " [" + ax.unit + "]";
  };
  std::string csv = axis_header(outer) + "," + axis_header(inner) + ",value [" +
                    to_string(da.data().unit()) + "]";
  if (with_stddev)
    csv += ",stddev [" + to_string(da.data().unit()) + "]";
  csv += "\n";
  for (int64_t i = 0; i < n0; ++i)
    for (int64_t j = 0; j < n1; ++j) {
      const size_t u = static_cast<size_t>(i * n1 + j);
      csv += axis_cells(outer, i) + "," + axis_cells(inner, j) + "," + format_double(values[u]);
      if (with_stddev)
        csv += "," + format_double(stddev[u]);
      csv += "\n";
    }
  write_file(csv, dir / (stem + ".csv"));

  Mapper m;
  m.x = finite_range(inner.values, inner.values);
  m.y = finite_range(outer.values, outer.values);
  const Range vr = finite_range(values, values);

  std::string svg;
  svg_header(svg);
  // Uniform cell grid; coord ranges only label the axes.
  const double cw = (kW - kML - kMR) / static_cast<double>(n1);
  const double ch = (kH - kMT - kMB) / static_cast<double>(n0);
  for (int64_t i = 0; i < n0; ++i)
    for (int64_t j = 0; j < n1; ++j) {
      const double v = values[static_cast<size_t>(i * n1 + j)];
      std::string fill = "#dddddd";
      if (std::isfinite(v)) {
        const double t = vr.hi == vr.lo ? 0.0 : (v - vr.lo) / (vr.hi - vr.lo);
        const int r = static_cast<int>(std::lround(255 - 224 * t));
        const int g = static_cast<int>(std::lround(247 - 180 * t));
        const int b = static_cast<int>(std::lround(255 - 75 * t));
        fill = "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," +
               std::to_string(b) + ")";
      }
      // Row 0 at the bottom, matching the y axis direction.
      svg += "<rect x=\"" + px(kML + cw * static_cast<double>(j)) + "\" y=\"" +
             px(kH - kMB - ch * static_cast<double>(i + 1)) + "\" width=\"" + px(cw) +
             "\" height=\"" + px(ch) + "\" fill=\"" + fill + "\"/>\n";
    }
  svg_axes(svg, m, inner.name + " [" + inner.unit + "]", outer.name + " [" + outer.unit + "]",
           stem + "  [" + tick(vr.lo) + ", " + tick(vr.hi) + "] " +
               to_string(da.data().unit()));
  svg += "</svg>\n";
  write_file(svg, dir / (stem + ".svg"));
}

} // namespace

void emit_plot(const DataArrayConstView &view, const std::filesystem::path &out_dir,
               const std::string &stem) {
  if (is_event(view.data().dtype()))
    throw UnsupportedError("cannot plot event data; histogram it first");
  const int rank = view.dims().rank();
  if (rank < 1 || rank > 2)
    throw UnsupportedError("plots are defined for rank 1 or 2 data, got rank " +
                           std::to_string(rank));
  std::filesystem::create_directories(out_dir);
  const DataArray da = copy(view);
  if (rank == 1)
    emit_1d(da, out_dir, stem);
  else
    emit_2d(da, out_dir, stem);
}

} // namespace larr
