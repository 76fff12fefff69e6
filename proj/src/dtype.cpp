// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/dtype.hpp"

#include <array>

#include "larr/error.hpp"

namespace larr {

namespace {
struct Name {
  DType dtype;
  std::string_view name;
};
constexpr std::array<Name, 10> kNames{{
    {DType::Float64, "float64"},
    {DType::Float32, "float32"},
    {DType::Int64, "int64"},
    {DType::Int32, "int32"},
    {DType::Bool, "bool"},
    {DType::String, "string"},
    {DType::EventListFloat64, "event_list_float64"},
    {DType::EventListFloat32, "event_list_float32"},
    {DType::EventListInt64, "event_list_int64"},
    {DType::EventListInt32, "event_list_int32"},
}};
} // namespace

std::string_view to_string(DType d) {
  for (const auto &entry : kNames)
    if (entry.dtype == d)
      return entry.name;
  throw TypeError("unknown dtype code");
}

DType dtype_from_string(std::string_view name) {
  for (const auto &entry : kNames)
    if (entry.name == name)
      return entry.dtype;
  throw TypeError("unknown dtype name '" + std::string(name) + "'");
}

} // namespace larr
