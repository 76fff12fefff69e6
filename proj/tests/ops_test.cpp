// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "larr/ops.hpp"

using namespace larr;

namespace {

Variable scalar(double v, const Unit &u,
                std::optional<double> var = std::nullopt) {
  std::optional<std::vector<double>> vv;
  if (var)
    vv = std::vector<double>{*var};
  return make_variable<double>(Dims{}, u, {v}, std::move(vv));
}

// Deterministic normal deviates for the Monte-Carlo checks.
struct Gauss {
  std::mt19937_64 rng;
  explicit Gauss(uint64_t seed) : rng(seed) {}
  double u01() { return (rng() >> 11) * 0x1.0p-53; }
  double operator()() {
    const double r = std::sqrt(-2.0 * std::log(1.0 - u01()));
    return r * std::cos(2.0 * M_PI * u01());
  }
};

// Sample variance of f(a + sa*g, b + sb*g) over n draws.
template <class F>
double sample_variance(F f, uint64_t seed, int n = 1000000) {
  Gauss g(seed);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = f(g);
    s += y;
    s2 += y * y;
  }
  return (s2 - s * s / n) / (n - 1);
}

} // namespace

TEST(Ops, add_basic) {
  const auto a =
      make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1.0, 2.0});
  const auto b =
      make_variable<double>(Dims({{"x", 2}}), Unit::m(), {10.0, 20.0});
  const Variable r = add(a, b);
  EXPECT_EQ(r.unit(), Unit::m());
  EXPECT_EQ(r.values<double>()[0], 11.0);
  EXPECT_EQ(r.values<double>()[1], 22.0);
}

TEST(Ops, add_unit_mismatch) {
  EXPECT_THROW(add(scalar(1, Unit::m()), scalar(1, Unit::s())), UnitError);
}

TEST(Ops, add_compatible_but_unequal_scale_rejected) {
  // angstrom and m share exponents but differ in scale: not equal, so
  // addition refuses rather than silently converting.
  EXPECT_THROW(add(scalar(1, Unit::m()), scalar(1, Unit::angstrom())),
               UnitError);
}

TEST(Ops, subtract_variances_add) {
  const Variable r = subtract(scalar(5, Unit::m(), 0.25),
                              scalar(3, Unit::m(), 0.5));
  EXPECT_EQ(r.values<double>()[0], 2.0);
  EXPECT_EQ(r.variances<double>()[0], 0.75);
}

TEST(Ops, multiply_frozen_example) {
  // (2.0 var 0.04 m) * (3.0 var 0.09 s) -> 6.0 var 9*0.04 + 4*0.09 = 0.72
  const Variable r = multiply(scalar(2, Unit::m(), 0.04),
                              scalar(3, Unit::s(), 0.09));
  EXPECT_EQ(r.unit(), Unit::m() * Unit::s());
  EXPECT_DOUBLE_EQ(r.values<double>()[0], 6.0);
  EXPECT_DOUBLE_EQ(r.variances<double>()[0], 0.72);
  // Monte-Carlo agreement for the same inputs
  const double mc = sample_variance(
      [](Gauss &g) { return (2.0 + 0.2 * g()) * (3.0 + 0.3 * g()); }, 11);
  EXPECT_NEAR(mc, 0.72, 0.05 * 0.72);
}

TEST(Ops, divide_frozen_example) {
  // (6.0 var 0.72 counts) / (3.0 var 0.09 counts) -> 2.0,
  // var 0.72/9 + 36*0.09/81 = 0.12, dimensionless
  const Variable r = divide(scalar(6, Unit::counts(), 0.72),
                            scalar(3, Unit::counts(), 0.09));
  EXPECT_EQ(r.unit(), Unit::dimensionless());
  EXPECT_DOUBLE_EQ(r.values<double>()[0], 2.0);
  EXPECT_DOUBLE_EQ(r.variances<double>()[0], 0.12);
  // These inputs carry ~14% relative sigma, so higher-order terms show up in
  // the sample variance; first-order still lands within 10%.
  const double sa = std::sqrt(0.72);
  const double mc = sample_variance(
      [sa](Gauss &g) { return (6.0 + sa * g()) / (3.0 + 0.3 * g()); }, 12);
  EXPECT_NEAR(mc, 0.12, 0.10 * 0.12);
}

TEST(Ops, divide_int_truncates) {
  const auto a = make_variable<int64_t>(Dims({{"x", 2}}), Unit::m(), {7, -7});
  const auto b = make_variable<int64_t>(Dims({{"x", 2}}), Unit::m(), {2, 2});
  const Variable r = divide(a, b);
  EXPECT_EQ(r.values<int64_t>()[0], 3);
  EXPECT_EQ(r.values<int64_t>()[1], -3);
}

TEST(Ops, divide_int_by_zero) {
  const auto a = make_variable<int64_t>(Dims({{"x", 1}}), Unit::m(), {7});
  const auto z = make_variable<int64_t>(Dims({{"x", 1}}), Unit::m(), {0});
  EXPECT_THROW(divide(a, z), ArithmeticError);
}

TEST(Ops, divide_float_by_zero_is_inf) {
  const Variable r = divide(scalar(1, Unit::m()), scalar(0, Unit::m()));
  EXPECT_TRUE(std::isinf(r.values<double>()[0]));
}

TEST(Ops, multiply_units_compose) {
  const Variable r = multiply(scalar(2, Unit::us()), scalar(3, Unit::us()));
  EXPECT_EQ(r.unit(), Unit::us() * Unit::us());
  EXPECT_EQ(r.unit().format(), "us^2");
}

TEST(Ops, sqrt_frozen_examples) {
  const Variable r = larr::sqrt(scalar(25, Unit::m() * Unit::m()));
  EXPECT_EQ(r.unit(), Unit::m());
  EXPECT_DOUBLE_EQ(r.values<double>()[0], 5.0);

  // sqrt(4.0 var 0.16) -> 2.0 var 0.16/16 = 0.01
  const Variable s = larr::sqrt(scalar(4, Unit::dimensionless(), 0.16));
  EXPECT_DOUBLE_EQ(s.values<double>()[0], 2.0);
  EXPECT_DOUBLE_EQ(s.variances<double>()[0], 0.01);
  const double mc =
      sample_variance([](Gauss &g) { return std::sqrt(4.0 + 0.4 * g()); }, 13);
  EXPECT_NEAR(mc, 0.01, 0.05 * 0.01);
}

TEST(Ops, sqrt_unit_must_be_even) {
  EXPECT_THROW(larr::sqrt(scalar(4, Unit::m())), UnitError);
}

TEST(Ops, sqrt_int_unsupported) {
  const auto a = make_variable<int64_t>(Dims({{"x", 1}}), Unit::m() * Unit::m(),
                                        {4});
  EXPECT_THROW(larr::sqrt(a), TypeError);
}

TEST(Ops, abs_keeps_unit_and_variance) {
  const Variable r = larr::abs(scalar(-3, Unit::m(), 0.25));
  EXPECT_EQ(r.unit(), Unit::m());
  EXPECT_EQ(r.values<double>()[0], 3.0);
  EXPECT_EQ(r.variances<double>()[0], 0.25);
}

TEST(Ops, sin_cos_require_dimensionless) {
  const Variable s = larr::sin(scalar(0.5, Unit::rad()));
  EXPECT_EQ(s.unit(), Unit::dimensionless());
  EXPECT_DOUBLE_EQ(s.values<double>()[0], std::sin(0.5));
  const Variable c = larr::cos(scalar(0.5, Unit::dimensionless()));
  EXPECT_DOUBLE_EQ(c.values<double>()[0], std::cos(0.5));
  EXPECT_THROW(larr::sin(scalar(0.5, Unit::m())), UnitError);
  EXPECT_THROW(larr::cos(scalar(0.5, Unit::s())), UnitError);
}

TEST(Ops, sin_variance_first_order) {
  const Variable s = larr::sin(scalar(0.5, Unit::rad(), 0.01));
  const double expect = std::cos(0.5) * std::cos(0.5) * 0.01;
  EXPECT_DOUBLE_EQ(s.variances<double>()[0], expect);
  const double mc =
      sample_variance([](Gauss &g) { return std::sin(0.5 + 0.1 * g()); }, 14);
  EXPECT_NEAR(mc, expect, 0.05 * expect);
}

TEST(Ops, event_multiply_by_dense) {
  const Variable ev(Dims({{"x", 2}}), Unit::us(),
                    EventStorage<double>::from_lists({{1, 2}, {3}}));
  const auto f =
      make_variable<double>(Dims({{"x", 2}}), Unit::dimensionless(), {2, 10});
  const Variable r = multiply(ev, f);
  EXPECT_EQ(r.unit(), Unit::us());
  EXPECT_EQ(r.event_values<double>(),
            EventStorage<double>::from_lists({{2, 4}, {30}}));
}

TEST(Ops, compare_returns_plain_bool) {
  const auto a = make_variable<double>(Dims({{"x", 3}}), Unit::m(),
                                       {1.0, 2.0, 3.0}, {{0.1, 0.1, 0.1}});
  const auto b = make_variable<double>(Dims({{"x", 3}}), Unit::m(),
                                       {2.0, 2.0, 2.0});
  const Variable eq = compare_eq(a, b);
  EXPECT_EQ(eq.dtype(), DType::Bool);
  EXPECT_EQ(eq.unit(), Unit::dimensionless());
  EXPECT_FALSE(eq.has_variances());
  EXPECT_FALSE(eq.values<bool>()[0]);
  EXPECT_TRUE(eq.values<bool>()[1]);
  EXPECT_FALSE(eq.values<bool>()[2]);
  const Variable lt = compare_lt(a, b);
  EXPECT_TRUE(lt.values<bool>()[0]);
  EXPECT_FALSE(lt.values<bool>()[1]);
  EXPECT_FALSE(lt.values<bool>()[2]);
}

TEST(Ops, compare_unit_mismatch) {
  EXPECT_THROW(compare_eq(scalar(1, Unit::m()), scalar(1, Unit::s())),
               UnitError);
}

TEST(Ops, compare_broadcasts) {
  const auto a = make_variable<double>(Dims({{"x", 3}}), Unit::m(), {1, 2, 3});
  const Variable r = compare_lt(a, scalar(2.5, Unit::m()));
  EXPECT_EQ(r.dims(), Dims({{"x", 3}}));
  EXPECT_TRUE(r.values<bool>()[0]);
  EXPECT_TRUE(r.values<bool>()[1]);
  EXPECT_FALSE(r.values<bool>()[2]);
}

TEST(Ops, sum_1d) {
  const auto v = make_variable<double>(Dims({{"x", 4}}), Unit::counts(),
                                       {1, 2, 3, 4}, {{1, 1, 1, 1}});
  const Variable r = sum(v, "x");
  EXPECT_EQ(r.dims(), Dims{});
  EXPECT_EQ(r.unit(), Unit::counts());
  EXPECT_EQ(r.values<double>()[0], 10.0);
  EXPECT_EQ(r.variances<double>()[0], 4.0);
}

TEST(Ops, sum_2d_each_dim) {
  // (x:2, y:3) iota: rows [0,1,2],[3,4,5]
  const auto v = make_variable<double>(Dims({{"x", 2}, {"y", 3}}), Unit::m(),
                                       {0, 1, 2, 3, 4, 5});
  const Variable sy = sum(v, "y");
  EXPECT_EQ(sy.dims(), Dims({{"x", 2}}));
  EXPECT_EQ(sy.values<double>()[0], 3.0);
  EXPECT_EQ(sy.values<double>()[1], 12.0);
  const Variable sx = sum(v, "x");
  EXPECT_EQ(sx.dims(), Dims({{"y", 3}}));
  EXPECT_EQ(sx.values<double>()[0], 3.0);
  EXPECT_EQ(sx.values<double>()[1], 5.0);
  EXPECT_EQ(sx.values<double>()[2], 7.0);
}

TEST(Ops, sum_ascending_index_order) {
  // Float addition is not associative; the contract fixes ascending order.
  std::vector<double> vals{1e16, 1.0, -1e16, 1.0};
  const auto v =
      make_variable<double>(Dims({{"x", 4}}), Unit::m(), std::move(vals));
  const Variable r = sum(v, "x");
  double expect = 0.0;
  for (const double x : {1e16, 1.0, -1e16, 1.0})
    expect += x;
  EXPECT_EQ(r.values<double>()[0], expect);
}

TEST(Ops, sum_int64) {
  const auto v =
      make_variable<int64_t>(Dims({{"x", 3}}), Unit::counts(), {1, 2, 3});
  const Variable r = sum(v, "x");
  EXPECT_EQ(r.dtype(), DType::Int64);
  EXPECT_EQ(r.values<int64_t>()[0], 6);
}

TEST(Ops, sum_errors) {
  const auto v = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  EXPECT_THROW(sum(v, "q"), DimsError);
  const auto b = make_variable<bool>(Dims({{"x", 2}}), Unit::dimensionless(),
                                     {true, false});
  EXPECT_THROW(sum(b, "x"), TypeError);
}

TEST(Ops, sum_through_view) {
  const auto v = make_variable<double>(Dims({{"x", 4}}), Unit::m(),
                                       {1, 2, 3, 4});
  const Variable r = sum(v.slice_range("x", 1, 3), "x");
  EXPECT_EQ(r.values<double>()[0], 5.0);
}

TEST(Ops, mean_frozen_example) {
  // each element var 0.01, N=4 -> var 0.04/16 = 0.0025
  const auto v = make_variable<double>(Dims({{"x", 4}}), Unit::m(),
                                       {1, 2, 3, 4}, {{0.01, 0.01, 0.01, 0.01}});
  const Variable r = mean(v, "x");
  EXPECT_EQ(r.unit(), Unit::m());
  EXPECT_DOUBLE_EQ(r.values<double>()[0], 2.5);
  EXPECT_DOUBLE_EQ(r.variances<double>()[0], 0.0025);
}

TEST(Ops, mean_requires_float) {
  const auto v =
      make_variable<int64_t>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  EXPECT_THROW(mean(v, "x"), TypeError);
}

TEST(Ops, mean_keeps_other_dims) {
  const auto v = make_variable<double>(Dims({{"x", 2}, {"y", 2}}), Unit::m(),
                                       {1, 3, 5, 7});
  const Variable r = mean(v, "x");
  EXPECT_EQ(r.dims(), Dims({{"y", 2}}));
  EXPECT_DOUBLE_EQ(r.values<double>()[0], 3.0);
  EXPECT_DOUBLE_EQ(r.values<double>()[1], 5.0);
}

TEST(Ops, concatenate_along_existing_dim) {
  const auto a = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  const auto b = make_variable<double>(Dims({{"x", 1}}), Unit::m(), {3});
  const Variable r = concatenate(a, b, "x");
  EXPECT_EQ(r.dims(), Dims({{"x", 3}}));
  EXPECT_EQ(r.values<double>()[2], 3.0);
}

TEST(Ops, concatenate_2d_keeps_other_extent) {
  const auto a = make_variable<double>(Dims({{"x", 2}, {"y", 2}}), Unit::m(),
                                       {1, 2, 3, 4});
  const auto b = make_variable<double>(Dims({{"x", 2}, {"y", 1}}), Unit::m(),
                                       {10, 20});
  const Variable r = concatenate(a, b, "y");
  EXPECT_EQ(r.dims(), Dims({{"x", 2}, {"y", 3}}));
  const auto v = r.values<double>();
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(v[1], 2.0);
  EXPECT_EQ(v[2], 10.0);
  EXPECT_EQ(v[3], 3.0);
  EXPECT_EQ(v[4], 4.0);
  EXPECT_EQ(v[5], 20.0);
}

TEST(Ops, concatenate_new_dim) {
  const auto a = make_variable<double>(Dims({{"y", 2}}), Unit::m(), {1, 2});
  const auto b = make_variable<double>(Dims({{"y", 2}}), Unit::m(), {3, 4});
  const Variable r = concatenate(a, b, "x");
  EXPECT_EQ(r.dims(), Dims({{"x", 2}, {"y", 2}}));
  EXPECT_EQ(r.values<double>()[0], 1.0);
  EXPECT_EQ(r.values<double>()[3], 4.0);
}

TEST(Ops, concatenate_scalars_make_1d) {
  const Variable r =
      concatenate(scalar(1, Unit::m()), scalar(2, Unit::m()), "x");
  EXPECT_EQ(r.dims(), Dims({{"x", 2}}));
}

TEST(Ops, concatenate_variances_travel) {
  const auto a = make_variable<double>(Dims({{"x", 1}}), Unit::m(), {1},
                                       {{0.25}});
  const auto b = make_variable<double>(Dims({{"x", 1}}), Unit::m(), {2},
                                       {{0.5}});
  const Variable r = concatenate(a, b, "x");
  EXPECT_EQ(r.variances<double>()[0], 0.25);
  EXPECT_EQ(r.variances<double>()[1], 0.5);
}

TEST(Ops, concatenate_errors) {
  const auto a = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  const auto bad_unit = make_variable<double>(Dims({{"x", 1}}), Unit::s(), {3});
  EXPECT_THROW(concatenate(a, bad_unit, "x"), UnitError);
  const auto bad_type = make_variable<int64_t>(Dims({{"x", 1}}), Unit::m(), {3});
  EXPECT_THROW(concatenate(a, bad_type, "x"), TypeError);
  const auto bad_var = make_variable<double>(Dims({{"x", 1}}), Unit::m(), {3},
                                             {{0.1}});
  EXPECT_THROW(concatenate(a, bad_var, "x"), TypeError);
  // dim present on one side only
  const auto noy = make_variable<double>(Dims({{"y", 2}}), Unit::m(), {1, 2});
  EXPECT_THROW(concatenate(a, noy, "x"), ShapeError);
  // other extents must agree
  const auto a22 = make_variable<double>(Dims({{"x", 2}, {"y", 2}}), Unit::m(),
                                         {1, 2, 3, 4});
  const auto a13 = make_variable<double>(Dims({{"x", 1}, {"y", 3}}), Unit::m(),
                                         {1, 2, 3});
  EXPECT_THROW(concatenate(a22, a13, "x"), ShapeError);
}

TEST(Ops, concatenate_event_lists) {
  const Variable a(Dims({{"x", 1}}), Unit::us(),
                   EventStorage<double>::from_lists({{1, 2}}));
  const Variable b(Dims({{"x", 1}}), Unit::us(),
                   EventStorage<double>::from_lists({{3}}));
  const Variable r = concatenate(a, b, "x");
  EXPECT_EQ(r.dims(), Dims({{"x", 2}}));
  EXPECT_EQ(r.event_values<double>(),
            EventStorage<double>::from_lists({{1, 2}, {3}}));
}

TEST(Ops, concatenate_strings) {
  const auto a = make_variable<std::string>(Dims({{"x", 1}}),
                                            Unit::dimensionless(), {"spec"});
  const auto b = make_variable<std::string>(Dims({{"x", 1}}),
                                            Unit::dimensionless(), {"trum"});
  const Variable r = concatenate(a, b, "x");
  EXPECT_EQ(r.values<std::string>()[0], "spec");
  EXPECT_EQ(r.values<std::string>()[1], "trum");
}

TEST(Ops, in_place_add) {
  auto v = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  add_in_place(v, scalar(10, Unit::m()));
  EXPECT_EQ(v.values<double>()[0], 11.0);
  EXPECT_EQ(v.values<double>()[1], 12.0);
}

TEST(Ops, in_place_add_through_view) {
  auto v = make_variable<double>(Dims({{"x", 4}}), Unit::m(), {0, 1, 2, 3});
  add_in_place(v.slice_range("x", 0, 2), scalar(5, Unit::m()));
  EXPECT_EQ(v.values<double>()[0], 5.0);
  EXPECT_EQ(v.values<double>()[1], 6.0);
  EXPECT_EQ(v.values<double>()[2], 2.0);
}

TEST(Ops, in_place_multiply_unit_rules) {
  auto v = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  multiply_in_place(v, scalar(2, Unit::s()));
  EXPECT_EQ(v.unit(), Unit::m() * Unit::s());
  auto w = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {1, 2});
  EXPECT_THROW(multiply_in_place(w.slice_range("x", 0, 2), scalar(2, Unit::s())),
               ViewError);
  // unit-preserving in-place multiply through a view is fine
  multiply_in_place(w.slice_range("x", 0, 2), scalar(2, Unit::dimensionless()));
  EXPECT_EQ(w.values<double>()[1], 4.0);
}

TEST(Ops, in_place_divide) {
  auto v = make_variable<double>(Dims({{"x", 2}}), Unit::m(), {4, 6});
  divide_in_place(v, scalar(2, Unit::dimensionless()));
  EXPECT_EQ(v.values<double>()[0], 2.0);
  EXPECT_EQ(v.values<double>()[1], 3.0);
  EXPECT_EQ(v.unit(), Unit::m());
}

TEST(Ops, in_place_subtract_variances) {
  auto v = make_variable<double>(Dims({{"x", 1}}), Unit::m(), {5}, {{0.25}});
  subtract_in_place(v, scalar(3, Unit::m(), 0.5));
  EXPECT_EQ(v.values<double>()[0], 2.0);
  EXPECT_EQ(v.variances<double>()[0], 0.75);
}
