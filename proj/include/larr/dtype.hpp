// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "larr/error.hpp"

namespace larr {

/// Element type of a Variable. Event-list types hold one variable-length
/// list of scalars per dense element.
enum class DType {
  Float64,
  Float32,
  Int64,
  Int32,
  Bool,
  String,
  EventListFloat64,
  EventListFloat32,
  EventListInt64,
  EventListInt32,
};

constexpr bool is_event(DType d) { return d >= DType::EventListFloat64; }

/// Scalar element type of an event-list dtype.
constexpr DType event_scalar(DType d) {
  switch (d) {
  case DType::EventListFloat64: return DType::Float64;
  case DType::EventListFloat32: return DType::Float32;
  case DType::EventListInt64: return DType::Int64;
  case DType::EventListInt32: return DType::Int32;
  default: return d;
  }
}

/// Variances are defined for floating-point data only.
constexpr bool supports_variances(DType d) {
  return d == DType::Float64 || d == DType::Float32 ||
         d == DType::EventListFloat64 || d == DType::EventListFloat32;
}

std::string_view to_string(DType d);
DType dtype_from_string(std::string_view name);

/// Marker for event-list element types in kernel type-combination lists.
template <class T> struct event_list {
  using value_type = T;
};

template <class T> struct dtype_of_t;
template <> struct dtype_of_t<double> { static constexpr DType value = DType::Float64; };
template <> struct dtype_of_t<float> { static constexpr DType value = DType::Float32; };
template <> struct dtype_of_t<int64_t> { static constexpr DType value = DType::Int64; };
template <> struct dtype_of_t<int32_t> { static constexpr DType value = DType::Int32; };
template <> struct dtype_of_t<bool> { static constexpr DType value = DType::Bool; };
template <> struct dtype_of_t<std::string> { static constexpr DType value = DType::String; };
template <> struct dtype_of_t<event_list<double>> { static constexpr DType value = DType::EventListFloat64; };
template <> struct dtype_of_t<event_list<float>> { static constexpr DType value = DType::EventListFloat32; };
template <> struct dtype_of_t<event_list<int64_t>> { static constexpr DType value = DType::EventListInt64; };
template <> struct dtype_of_t<event_list<int32_t>> { static constexpr DType value = DType::EventListInt32; };

template <class T> inline constexpr DType dtype_of = dtype_of_t<T>::value;

/// Call f with a std::type_identity tag for the element type of a dense
/// dtype.
template <class F> decltype(auto) visit_dense_dtype(DType d, F &&f) {
  switch (d) {
  case DType::Float64: return f(std::type_identity<double>{});
  case DType::Float32: return f(std::type_identity<float>{});
  case DType::Int64: return f(std::type_identity<int64_t>{});
  case DType::Int32: return f(std::type_identity<int32_t>{});
  case DType::Bool: return f(std::type_identity<bool>{});
  case DType::String: return f(std::type_identity<std::string>{});
  default: break;
  }
  throw TypeError("expected a dense dtype, got " + std::string(to_string(d)));
}

/// Call f with a std::type_identity tag for the scalar type of an event-list
/// dtype.
template <class F> decltype(auto) visit_event_dtype(DType d, F &&f) {
  switch (d) {
  case DType::EventListFloat64: return f(std::type_identity<double>{});
  case DType::EventListFloat32: return f(std::type_identity<float>{});
  case DType::EventListInt64: return f(std::type_identity<int64_t>{});
  case DType::EventListInt32: return f(std::type_identity<int32_t>{});
  default: break;
  }
  throw TypeError("expected an event-list dtype, got " +
                  std::string(to_string(d)));
}

} // namespace larr
