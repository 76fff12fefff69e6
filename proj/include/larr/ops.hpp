// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <string>

#include "larr/transform.hpp"
#include "larr/variable.hpp"

namespace larr {

namespace kernels {

// Same-type pairs plus the safe promotions (int32 -> int64, float32 ->
// float64) and the dense-into-event forms.
using arith_binary_types = std::tuple<
    std::tuple<double, double>, std::tuple<float, float>,
    std::tuple<int64_t, int64_t>, std::tuple<int32_t, int32_t>,
    std::tuple<double, float>, std::tuple<float, double>,
    std::tuple<int64_t, int32_t>, std::tuple<int32_t, int64_t>,
    std::tuple<event_list<double>, double>,
    std::tuple<double, event_list<double>>,
    std::tuple<event_list<float>, float>,
    std::tuple<float, event_list<float>>>;

using float_unary_types =
    std::tuple<std::tuple<double>, std::tuple<float>,
               std::tuple<event_list<double>>, std::tuple<event_list<float>>>;

struct plus {
  using types = arith_binary_types;
  Unit operator()(const Unit &a, const Unit &b) const {
    if (a != b)
      throw UnitError("add: units " + to_string(a) + " and " + to_string(b) +
                      " do not match");
    return a;
  }
  template <class A, class B> auto operator()(const A &a, const B &b) const {
    return a + b;
  }
};

struct minus {
  using types = arith_binary_types;
  Unit operator()(const Unit &a, const Unit &b) const {
    if (a != b)
      throw UnitError("subtract: units " + to_string(a) + " and " +
                      to_string(b) + " do not match");
    return a;
  }
  template <class A, class B> auto operator()(const A &a, const B &b) const {
    return a - b;
  }
};

struct times {
  using types = arith_binary_types;
  Unit operator()(const Unit &a, const Unit &b) const { return a * b; }
  template <class A, class B> auto operator()(const A &a, const B &b) const {
    return a * b;
  }
};

struct divide {
  using types = arith_binary_types;
  Unit operator()(const Unit &a, const Unit &b) const { return a / b; }
  template <class A, class B> auto operator()(const A &a, const B &b) const {
    if constexpr (std::is_integral_v<B>) {
      if (b == 0)
        throw ArithmeticError("divide: integer division by zero");
    }
    return a / b;
  }
};

struct sqrt_op {
  using types = float_unary_types;
  Unit operator()(const Unit &a) const { return a.sqrt(); }
  template <class A> auto operator()(const A &a) const {
    using std::sqrt;
    return sqrt(a);
  }
};

struct abs_op {
  using types = float_unary_types;
  Unit operator()(const Unit &a) const { return a; }
  template <class A> auto operator()(const A &a) const {
    using std::abs;
    return abs(a);
  }
};

struct sin_op {
  using types = float_unary_types;
  Unit operator()(const Unit &a) const {
    if (a != Unit::dimensionless())
      throw UnitError("sin: unit " + to_string(a) +
                      " is not dimensionless/rad");
    return Unit::dimensionless();
  }
  template <class A> auto operator()(const A &a) const {
    using std::sin;
    return sin(a);
  }
};

struct cos_op {
  using types = float_unary_types;
  Unit operator()(const Unit &a) const {
    if (a != Unit::dimensionless())
      throw UnitError("cos: unit " + to_string(a) +
                      " is not dimensionless/rad");
    return Unit::dimensionless();
  }
  template <class A> auto operator()(const A &a) const {
    using std::cos;
    return cos(a);
  }
};

using compare_types =
    std::tuple<std::tuple<double, double>, std::tuple<float, float>,
               std::tuple<int64_t, int64_t>, std::tuple<int32_t, int32_t>,
               std::tuple<double, float>, std::tuple<float, double>,
               std::tuple<int64_t, int32_t>, std::tuple<int32_t, int64_t>>;

struct equal {
  static constexpr bool propagates_variances = false;
  using types = compare_types;
  Unit operator()(const Unit &a, const Unit &b) const {
    if (a != b)
      throw UnitError("compare_eq: units " + to_string(a) + " and " +
                      to_string(b) + " do not match");
    return Unit::dimensionless();
  }
  template <class A, class B> bool operator()(const A &a, const B &b) const {
    return a == b;
  }
};

struct less {
  static constexpr bool propagates_variances = false;
  using types = compare_types;
  Unit operator()(const Unit &a, const Unit &b) const {
    if (a != b)
      throw UnitError("compare_lt: units " + to_string(a) + " and " +
                      to_string(b) + " do not match");
    return Unit::dimensionless();
  }
  template <class A, class B> bool operator()(const A &a, const B &b) const {
    return a < b;
  }
};

} // namespace kernels

Variable add(const VariableConstView &a, const VariableConstView &b);
Variable subtract(const VariableConstView &a, const VariableConstView &b);
Variable multiply(const VariableConstView &a, const VariableConstView &b);
Variable divide(const VariableConstView &a, const VariableConstView &b);

void add_in_place(Variable &a, const VariableConstView &b);
void add_in_place(VariableView a, const VariableConstView &b);
void subtract_in_place(Variable &a, const VariableConstView &b);
void subtract_in_place(VariableView a, const VariableConstView &b);
void multiply_in_place(Variable &a, const VariableConstView &b);
void multiply_in_place(VariableView a, const VariableConstView &b);
void divide_in_place(Variable &a, const VariableConstView &b);
void divide_in_place(VariableView a, const VariableConstView &b);

Variable sqrt(const VariableConstView &v);
Variable abs(const VariableConstView &v);
Variable sin(const VariableConstView &v);
Variable cos(const VariableConstView &v);

Variable compare_eq(const VariableConstView &a, const VariableConstView &b);
Variable compare_lt(const VariableConstView &a, const VariableConstView &b);

/// Reduce along dim in ascending index order; variances add.
Variable sum(const VariableConstView &v, const std::string &dim);
/// sum/N with variance (sum of variances)/N^2; float data only.
Variable mean(const VariableConstView &v, const std::string &dim);

/// Join along dim (extents add). When dim is absent from both operands a new
/// leading dim of extent 2 is created; mixed presence is a shape error.
Variable concatenate(const VariableConstView &a, const VariableConstView &b,
                     const std::string &dim);

} // namespace larr
