// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "larr/ops.hpp"

namespace larr {

namespace {

template <class T> std::string shortest(T v) {
  // to_chars without a format picks the shortest round-trip form; it also
  // spells non-finite values exactly as the file format wants them.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  return shortest(v);
}

std::string format_float(float v) {
  if (std::isnan(v))
    return "nan";
  return shortest(v);
}

namespace {

void append_quoted(std::string &out, std::string_view s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    case '\r': out += "\\r"; break;
    default:
      if (static_cast<unsigned char>(c) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", c);
        out += buf;
      } else {
        out += c;
      }
    }
  }
  out += '"';
}

// Integer-looking text would load as a JSON integer and drop the sign of
// -0.0; force a fractional form so the parser keeps float typing.
void append_float_text(std::string &out, std::string s) {
  if (s.find_first_of(".eE") == std::string::npos)
    s += ".0";
  out += s;
}

void append_scalar(std::string &out, double v) {
  if (std::isfinite(v)) {
    append_float_text(out, format_double(v));
  } else {
    append_quoted(out, format_double(v));
  }
}

void append_scalar(std::string &out, float v) {
  if (std::isfinite(v)) {
    append_float_text(out, format_float(v));
  } else {
    append_quoted(out, format_float(v));
  }
}

void append_scalar(std::string &out, int64_t v) { out += std::to_string(v); }
void append_scalar(std::string &out, int32_t v) { out += std::to_string(v); }
void append_scalar(std::string &out, bool v) { out += v ? "true" : "false"; }
void append_scalar(std::string &out, const std::string &v) { append_quoted(out, v); }

template <class Range> void append_array(std::string &out, const Range &r) {
  out += '[';
  bool first = true;
  for (const auto &e : r) {
    if (!first)
      out += ',';
    first = false;
    append_scalar(out, e);
  }
  out += ']';
}

void append_variable(std::string &out, const Variable &v) {
  out += "{\"dims\":[";
  const Dims &d = v.dims();
  for (int i = 0; i < d.rank(); ++i) {
    if (i)
      out += ',';
    out += '[';
    append_quoted(out, d.label(i));
    out += ',';
    out += std::to_string(d.extent(i));
    out += ']';
  }
  out += "],\"unit\":";
  append_quoted(out, v.unit().format());
  out += ",\"dtype\":";
  append_quoted(out, to_string(v.dtype()));
  out += ",\"values\":";
  if (is_event(v.dtype())) {
    visit_event_dtype(v.dtype(), [&](auto tag) {
      using T = typename decltype(tag)::type;
      const auto emit = [&](const EventStorage<T> &ev) {
        out += "{\"offsets\":";
        append_array(out, ev.offsets);
        out += ",\"flat\":";
        append_array(out, ev.flat);
        out += '}';
      };
      emit(v.event_values<T>());
      if (v.has_variances()) {
        out += ",\"variances\":";
        emit(v.event_variances<T>());
      }
    });
  } else {
    visit_dense_dtype(v.dtype(), [&](auto tag) {
      using T = typename decltype(tag)::type;
      append_array(out, v.values<T>());
      if (v.has_variances()) {
        out += ",\"variances\":";
        append_array(out, v.variances<T>());
      }
    });
  }
  out += '}';
}

void append_variable_map(std::string &out, const std::map<std::string, Variable> &vars,
                         const char *indent) {
  if (vars.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  bool first = true;
  for (const auto &[name, var] : vars) {
    if (!first)
      out += ",\n";
    first = false;
    out += indent;
    append_quoted(out, name);
    out += ": ";
    append_variable(out, var);
  }
  out += "\n";
  out.append(indent, strlen(indent) - 2);
  out += "}";
}

} // namespace

std::string to_json_text(const DataArrayConstView &da) {
  // Materialize first: views may be strided, the writer wants owning
  // contiguous variables.
  const DataArray owned = copy(da);
  std::string out = "{\n  \"version\": 1,\n  \"kind\": \"data_array\",\n  \"data\": ";
  append_variable(out, owned.data());
  out += ",\n  \"coords\": ";
  append_variable_map(out, owned.coords(), "    ");
  out += ",\n  \"attrs\": ";
  append_variable_map(out, owned.attrs(), "    ");
  out += "\n}\n";
  return out;
}

std::string to_json_text(const Dataset &ds) {
  std::string out = "{\n  \"version\": 1,\n  \"kind\": \"dataset\",\n  \"coords\": ";
  append_variable_map(out, ds.coords(), "    ");
  out += ",\n  \"items\": ";
  if (ds.items().empty()) {
    out += "{}";
  } else {
    out += "{\n";
    bool first = true;
    for (const auto &[name, item] : ds.items()) {
      if (!first)
        out += ",\n";
      first = false;
      out += "    ";
      append_quoted(out, name);
      out += ": {\n      \"data\": ";
      append_variable(out, item.data);
      out += ",\n      \"attrs\": ";
      append_variable_map(out, item.attrs, "        ");
      out += "\n    }";
    }
    out += "\n  }";
  }
  out += "\n}\n";
  return out;
}

namespace {

using nlohmann::json;

const json &member(const json &j, const char *key, const std::string &where) {
  if (!j.is_object())
    throw ParseError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

int64_t read_integer(const json &e, const std::string &where) {
  if (!e.is_number_integer())
    throw ParseError(where + ": expected an integer");
  if (e.is_number_unsigned() && e.get<uint64_t>() >
                                    static_cast<uint64_t>(std::numeric_limits<int64_t>::max()))
    throw ParseError(where + ": integer out of range");
  return e.get<int64_t>();
}

template <class T> T read_scalar(const json &e, const std::string &where) {
  if constexpr (std::is_same_v<T, double> || std::is_same_v<T, float>) {
    if (e.is_number())
      return static_cast<T>(e.get<double>());
    if (e.is_string()) {
      const auto &s = e.get_ref<const std::string &>();
      if (s == "nan")
        return std::numeric_limits<T>::quiet_NaN();
      if (s == "inf")
        return std::numeric_limits<T>::infinity();
      if (s == "-inf")
        return -std::numeric_limits<T>::infinity();
    }
    throw ParseError(where + ": expected a number or one of \"nan\", \"inf\", \"-inf\"");
  } else if constexpr (std::is_same_v<T, int64_t>) {
    return read_integer(e, where);
  } else if constexpr (std::is_same_v<T, int32_t>) {
    const int64_t v = read_integer(e, where);
    if (v < std::numeric_limits<int32_t>::min() || v > std::numeric_limits<int32_t>::max())
      throw ParseError(where + ": value does not fit int32");
    return static_cast<int32_t>(v);
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!e.is_boolean())
      throw ParseError(where + ": expected a boolean");
    return e.get<bool>();
  } else {
    if (!e.is_string())
      throw ParseError(where + ": expected a string");
    return e.get<std::string>();
  }
}

template <class T>
std::vector<T> read_dense(const json &j, const std::string &where) {
  if (!j.is_array())
    throw ParseError(where + ": expected an array");
  std::vector<T> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(read_scalar<T>(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T>
EventStorage<T> read_event(const json &j, const std::string &where) {
  std::vector<int64_t> offsets;
  const json &joff = member(j, "offsets", where);
  if (!joff.is_array())
    throw ParseError(where + ".offsets: expected an array");
  offsets.reserve(joff.size());
  for (size_t i = 0; i < joff.size(); ++i)
    offsets.push_back(read_integer(joff[i], where + ".offsets[" + std::to_string(i) + "]"));
  std::vector<T> flat = read_dense<T>(member(j, "flat", where), where + ".flat");
  // The storage constructor rejects broken offset tables (ValidationError).
  return EventStorage<T>(std::move(offsets), std::move(flat));
}

Variable variable_from_json(const json &j, const std::string &where) {
  const json &jdims = member(j, "dims", where);
  if (!jdims.is_array())
    throw ParseError(where + ".dims: expected an array of [label, extent] pairs");
  Dims dims;
  for (size_t i = 0; i < jdims.size(); ++i) {
    const json &pair = jdims[i];
    const std::string at = where + ".dims[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      throw ParseError(at + ": expected a [label, extent] pair");
    dims.push_back(pair[0].get<std::string>(), read_integer(pair[1], at));
  }

  const json &junit = member(j, "unit", where);
  if (!junit.is_string())
    throw ParseError(where + ".unit: expected a string");
  Unit unit = Unit::dimensionless();
  try {
    unit = Unit::parse(junit.get_ref<const std::string &>());
  } catch (const ParseError &e) {
    throw ParseError(where + ".unit: " + e.what());
  }

  const json &jdtype = member(j, "dtype", where);
  if (!jdtype.is_string())
    throw ParseError(where + ".dtype: expected a string");
  DType dt = DType::Float64;
  try {
    dt = dtype_from_string(jdtype.get_ref<const std::string &>());
  } catch (const TypeError &e) {
    throw ParseError(where + ".dtype: " + e.what());
  }

  const json &jvalues = member(j, "values", where);
  const json *jvariances = nullptr;
  if (const auto it = j.find("variances"); it != j.end())
    jvariances = &*it;

  if (is_event(dt)) {
    return visit_event_dtype(dt, [&](auto tag) {
      using T = typename decltype(tag)::type;
      std::optional<Storage> variances;
      if (jvariances)
        variances = read_event<T>(*jvariances, where + ".variances");
      return Variable(std::move(dims), unit, read_event<T>(jvalues, where + ".values"),
                      std::move(variances));
    });
  }
  return visit_dense_dtype(dt, [&](auto tag) {
    using T = typename decltype(tag)::type;
    std::optional<Storage> variances;
    if (jvariances)
      variances = Buffer<T>(read_dense<T>(*jvariances, where + ".variances"));
    return Variable(std::move(dims), unit,
                    Buffer<T>(read_dense<T>(jvalues, where + ".values")),
                    std::move(variances));
  });
}

std::map<std::string, Variable> variable_map_from_json(const json &j,
                                                       const std::string &where) {
  if (!j.is_object())
    throw ParseError(where + ": expected an object");
  std::map<std::string, Variable> out;
  for (const auto &[name, jv] : j.items())
    out.emplace(name, variable_from_json(jv, where + "." + name));
  return out;
}

DataArray data_array_from_json(const json &j) {
  Variable data = variable_from_json(member(j, "data", "$"), "$.data");
  auto coords = variable_map_from_json(member(j, "coords", "$"), "$.coords");
  auto attrs = variable_map_from_json(member(j, "attrs", "$"), "$.attrs");
  return DataArray(std::move(data), std::move(coords), std::move(attrs));
}

Dataset dataset_from_json(const json &j) {
  auto coords = variable_map_from_json(member(j, "coords", "$"), "$.coords");
  const json &jitems = member(j, "items", "$");
  if (!jitems.is_object())
    throw ParseError("$.items: expected an object");
  Dataset ds;
  for (const auto &[name, coord] : coords)
    ds.set_coord(name, coord);
  for (const auto &[name, ji] : jitems.items()) {
    const std::string where = "$.items." + name;
    Variable data = variable_from_json(member(ji, "data", where), where + ".data");
    auto attrs = variable_map_from_json(member(ji, "attrs", where), where + ".attrs");
    // The item carries whichever shared coords fit it, so construction-time
    // checks (event coords in particular) see the same view Dataset::get
    // would produce.
    std::map<std::string, Variable> item_coords;
    for (const auto &[cname, coord] : coords)
      if (coord_fits(coord, data))
        item_coords.emplace(cname, coord);
    ds.set(name, DataArray(std::move(data), std::move(item_coords), std::move(attrs)));
  }
  ds.validate();
  return ds;
}

} // namespace

Document from_json_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  const json &jversion = member(j, "version", "$");
  if (!jversion.is_number_integer() || jversion.get<int64_t>() != 1)
    throw ParseError("$.version: expected the integer 1");
  const json &jkind = member(j, "kind", "$");
  if (!jkind.is_string())
    throw ParseError("$.kind: expected a string");
  const std::string kind = jkind.get<std::string>();
  if (kind == "data_array")
    return data_array_from_json(j);
  if (kind == "dataset")
    return dataset_from_json(j);
  throw ParseError("$.kind: unknown kind '" + kind + "'");
}

namespace {

void write_text(const std::string &text, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

} // namespace

void save(const DataArrayConstView &da, const std::filesystem::path &path) {
  write_text(to_json_text(da), path);
}

void save(const Dataset &ds, const std::filesystem::path &path) {
  write_text(to_json_text(ds), path);
}

Document load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

} // namespace larr
