// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <cmath>
#include <type_traits>

namespace larr {

/// Value with Gaussian uncertainty, carried through arithmetic via linear
/// error propagation. Correlations are ignored by design.
template <class T> struct ValueAndVariance {
  T value;
  T variance;
};

template <class T1, class T2>
constexpr auto operator+(ValueAndVariance<T1> a, ValueAndVariance<T2> b) {
  using T = std::common_type_t<T1, T2>;
  return ValueAndVariance<T>{a.value + b.value, a.variance + b.variance};
}

template <class T1, class T2>
constexpr auto operator-(ValueAndVariance<T1> a, ValueAndVariance<T2> b) {
  using T = std::common_type_t<T1, T2>;
  return ValueAndVariance<T>{a.value - b.value, a.variance + b.variance};
}

template <class T1, class T2>
constexpr auto operator*(ValueAndVariance<T1> a, ValueAndVariance<T2> b) {
  using T = std::common_type_t<T1, T2>;
  return ValueAndVariance<T>{a.value * b.value,
                             a.variance * b.value * b.value +
                                 b.variance * a.value * a.value};
}

template <class T1, class T2>
constexpr auto operator/(ValueAndVariance<T1> a, ValueAndVariance<T2> b) {
  using T = std::common_type_t<T1, T2>;
  return ValueAndVariance<T>{
      a.value / b.value,
      a.variance / (b.value * b.value) +
          b.variance * a.value * a.value / (b.value * b.value * b.value * b.value)};
}

template <class T> auto sqrt(ValueAndVariance<T> a) {
  using std::sqrt;
  const T root = sqrt(a.value);
  return ValueAndVariance<T>{root, a.variance / (4 * a.value)};
}

template <class T> auto abs(ValueAndVariance<T> a) {
  using std::abs;
  return ValueAndVariance<T>{abs(a.value), a.variance};
}

template <class T> auto sin(ValueAndVariance<T> a) {
  using std::cos;
  using std::sin;
  const T c = cos(a.value);
  return ValueAndVariance<T>{sin(a.value), c * c * a.variance};
}

template <class T> auto cos(ValueAndVariance<T> a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.value);
  return ValueAndVariance<T>{cos(a.value), s * s * a.variance};
}

template <class T> struct is_value_and_variance : std::false_type {};
template <class T>
struct is_value_and_variance<ValueAndVariance<T>> : std::true_type {};
template <class T>
inline constexpr bool is_value_and_variance_v = is_value_and_variance<T>::value;

} // namespace larr
