// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "larr/events.hpp"
#include "larr/ops.hpp"

using namespace larr;

namespace {

// Two spectra with unit weights and a tof event coord, the smallest data
// that exercises per-list binning.
DataArray make_event_array() {
  Variable weights = make_event_variable<double>(
      {{"s", 2}}, Unit::counts(), {{1.0, 1.0, 1.0}, {1.0}});
  Variable tof = make_event_variable<double>(
      {{"s", 2}}, Unit::us(), {{0.5, 1.5, 1.7}, {2.5}});
  return DataArray(std::move(weights), {{"tof", std::move(tof)}});
}

Variable tof_edges(std::vector<double> e) {
  const int64_t n = static_cast<int64_t>(e.size());
  return make_variable<double>({{"tof", n}}, Unit::us(), std::move(e));
}

} // namespace

TEST(events, histogram_basic_counts) {
  const DataArray da = make_event_array();
  const DataArray h = histogram(da, tof_edges({0.0, 1.0, 2.0, 3.0}));
  EXPECT_EQ(h.dims(), (Dims{{"s", 2}, {"tof", 3}}));
  EXPECT_EQ(h.unit(), Unit::counts());
  ASSERT_TRUE(h.data().has_variances());
  // Spectrum 0: 0.5 -> bin 0, 1.5 and 1.7 -> bin 1; spectrum 1: 2.5 -> bin 2.
  const auto v = h.data().values<double>();
  const auto var = h.data().variances<double>();
  const std::vector<double> want{1.0, 2.0, 0.0, 0.0, 0.0, 1.0};
  for (size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(v[i], want[i]) << i;
    EXPECT_EQ(var[i], want[i]) << i; // unit weights: variance = count
  }
  // Edges become the bin-edge coord of the new dim.
  ASSERT_TRUE(h.has_coord("tof"));
  EXPECT_TRUE(equals(h.coord("tof"), tof_edges({0.0, 1.0, 2.0, 3.0})));
  EXPECT_TRUE(is_edges(h, "tof", "tof"));
}

TEST(events, histogram_boundaries_half_open) {
  Variable w = make_event_variable<double>(
      {{"s", 1}}, Unit::counts(), {{1.0, 1.0, 1.0, 1.0, 1.0}});
  Variable t = make_event_variable<double>(
      {{"s", 1}}, Unit::us(), {{-0.1, 0.0, 1.0, 2.0, 2.3}});
  const DataArray da(std::move(w), {{"tof", std::move(t)}});
  const DataArray h = histogram(da, tof_edges({0.0, 1.0, 2.0}));
  const auto v = h.data().values<double>();
  // -0.1 below range and 2.0/2.3 at-or-above the last edge are discarded;
  // 0.0 lands in bin 0 (lower edge inclusive), 1.0 in bin 1.
  EXPECT_EQ(v[0], 1.0);
  EXPECT_EQ(v[1], 1.0);
}

TEST(events, histogram_weighted_with_variances) {
  Variable w = make_event_variable<double>({{"s", 1}}, Unit::counts(),
                                           {{2.0, 3.0, 4.0}},
                                           {{{0.5, 1.0, 2.0}}});
  Variable t = make_event_variable<double>({{"s", 1}}, Unit::us(),
                                           {{0.5, 0.6, 1.5}});
  const DataArray da(std::move(w), {{"tof", std::move(t)}});
  const DataArray h = histogram(da, tof_edges({0.0, 1.0, 2.0}));
  EXPECT_EQ(h.data().values<double>()[0], 5.0);
  EXPECT_EQ(h.data().values<double>()[1], 4.0);
  // Stored weight variances add per bin instead of the Poisson fallback.
  EXPECT_EQ(h.data().variances<double>()[0], 1.5);
  EXPECT_EQ(h.data().variances<double>()[1], 2.0);
}

TEST(events, histogram_keeps_dense_metadata_drops_other_event_coords) {
  Variable w = make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                           {{1.0}, {1.0, 1.0}});
  Variable t = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                           {{0.5}, {0.2, 1.5}});
  Variable pulse = make_event_variable<double>({{"s", 2}}, Unit::s(),
                                               {{9.0}, {8.0, 7.0}});
  DataArray da(std::move(w), {{"tof", std::move(t)},
                              {"pulse", std::move(pulse)},
                              {"s", make_variable<int64_t>(
                                        {{"s", 2}}, Unit::dimensionless(),
                                        {7, 8})}},
               {{"run", make_variable<int64_t>(Dims{}, Unit::dimensionless(),
                                               {12})}});
  const DataArray h = histogram(da, tof_edges({0.0, 1.0, 2.0}));
  EXPECT_TRUE(h.has_coord("s"));
  EXPECT_TRUE(h.has_coord("tof"));
  EXPECT_FALSE(h.has_coord("pulse"));
  EXPECT_TRUE(h.has_attr("run"));
  EXPECT_EQ(h.data().values<double>()[2], 1.0);
  EXPECT_EQ(h.data().values<double>()[3], 1.0);
}

TEST(events, histogram_of_slice_and_scalar_input) {
  const DataArray da = make_event_array();
  const DataArray h1 = histogram(da.slice_range("s", 1, 2),
                                 tof_edges({0.0, 3.0}));
  EXPECT_EQ(h1.dims(), (Dims{{"s", 1}, {"tof", 1}}));
  EXPECT_EQ(h1.data().values<double>()[0], 1.0);
  // A point slice leaves 0-D event data; the result is purely binned.
  const DataArray h0 = histogram(da.slice_point("s", 0),
                                 tof_edges({0.0, 1.0, 2.0}));
  EXPECT_EQ(h0.dims(), (Dims{{"tof", 2}}));
  EXPECT_EQ(h0.data().values<double>()[0], 1.0);
  EXPECT_EQ(h0.data().values<double>()[1], 2.0);
}

TEST(events, histogram_matches_naive_binning) {
  // 10k events over 100 bins, checked against an independent per-event scan.
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> pos(-1.0, 11.0);
  std::uniform_int_distribution<int> wdist(1, 5);
  const int64_t ns = 25, nb = 100;
  std::vector<std::vector<double>> ws(ns), ts(ns);
  for (int64_t s = 0; s < ns; ++s) {
    for (int64_t e = 0; e < 400; ++e) {
      ts[static_cast<size_t>(s)].push_back(pos(rng));
      ws[static_cast<size_t>(s)].push_back(static_cast<double>(wdist(rng)));
    }
  }
  std::vector<double> edges(static_cast<size_t>(nb + 1));
  for (int64_t i = 0; i <= nb; ++i)
    edges[static_cast<size_t>(i)] = static_cast<double>(i) / 10.0;

  const DataArray da(
      make_event_variable<double>({{"s", ns}}, Unit::counts(), ws),
      {{"tof", make_event_variable<double>({{"s", ns}}, Unit::us(), ts)}});
  const DataArray h = histogram(
      da, make_variable<double>({{"tof", nb + 1}}, Unit::us(), edges));

  std::vector<double> naive(static_cast<size_t>(ns * nb), 0.0);
  for (int64_t s = 0; s < ns; ++s) {
    for (size_t e = 0; e < ts[static_cast<size_t>(s)].size(); ++e) {
      const double x = ts[static_cast<size_t>(s)][e];
      for (int64_t b = 0; b < nb; ++b) {
        if (x >= edges[static_cast<size_t>(b)] &&
            x < edges[static_cast<size_t>(b) + 1]) {
          naive[static_cast<size_t>(s * nb + b)] +=
              ws[static_cast<size_t>(s)][e];
          break;
        }
      }
    }
  }
  const auto v = h.data().values<double>();
  for (size_t i = 0; i < naive.size(); ++i)
    ASSERT_EQ(v[i], naive[i]) << "bin " << i;
}

TEST(events, histogram_errors) {
  const DataArray da = make_event_array();
  // Edges must be 1-D, long enough, increasing, float64, matching unit.
  EXPECT_THROW(histogram(da, make_variable<double>(Dims{}, Unit::us(), {1.})),
               EdgesError);
  EXPECT_THROW(histogram(da, tof_edges({1.0})), EdgesError);
  EXPECT_THROW(histogram(da, tof_edges({0.0, 2.0, 2.0})), EdgesError);
  EXPECT_THROW(histogram(da, tof_edges({0.0, 2.0, 1.0})), EdgesError);
  EXPECT_THROW(histogram(da, make_variable<double>({{"tof", 2}}, Unit::m(),
                                                   {0.0, 1.0})),
               UnitError);
  // No event coord of the edges' name.
  EXPECT_THROW(histogram(da, make_variable<double>({{"energy", 2}},
                                                   Unit::us(), {0.0, 1.0})),
               CoordError);
  // The new dim may not collide with a dense dim.
  EXPECT_THROW(histogram(da, make_variable<double>({{"s", 2}}, Unit::us(),
                                                   {0.0, 1.0})),
               DimsError);
  // Dense input data cannot be histogrammed.
  DataArray dense(make_variable<double>({{"s", 2}}, Unit::counts(),
                                        {1.0, 2.0}));
  EXPECT_THROW(histogram(dense, tof_edges({0.0, 1.0})), TypeError);
}

TEST(events, flatten_concatenates_ascending) {
  Variable w = make_event_variable<double>(
      {{"a", 2}, {"b", 2}}, Unit::counts(),
      {{1.0}, {2.0, 3.0}, {4.0}, {5.0}});
  Variable t = make_event_variable<double>(
      {{"a", 2}, {"b", 2}}, Unit::us(),
      {{10.0}, {20.0, 30.0}, {40.0}, {50.0}});
  DataArray da(std::move(w),
               {{"tof", std::move(t)},
                {"a", make_variable<int64_t>({{"a", 2}},
                                             Unit::dimensionless(), {0, 1})},
                {"b", make_variable<int64_t>({{"b", 2}},
                                             Unit::dimensionless(), {5, 6})}});

  const DataArray fb = flatten(da, "b");
  EXPECT_EQ(fb.dims(), (Dims{{"a", 2}}));
  EXPECT_TRUE(equals(fb.data(),
                     make_event_variable<double>({{"a", 2}}, Unit::counts(),
                                                 {{1.0, 2.0, 3.0},
                                                  {4.0, 5.0}})));
  EXPECT_TRUE(equals(fb.coord("tof"),
                     make_event_variable<double>({{"a", 2}}, Unit::us(),
                                                 {{10.0, 20.0, 30.0},
                                                  {40.0, 50.0}})));
  // The consumed dim's dense coord goes away; the other survives.
  EXPECT_FALSE(fb.has_coord("b"));
  EXPECT_TRUE(fb.has_coord("a"));

  // Flattening the outer dim interleaves in ascending a order per b.
  const DataArray fa = flatten(da, "a");
  EXPECT_TRUE(equals(fa.data(),
                     make_event_variable<double>({{"b", 2}}, Unit::counts(),
                                                 {{1.0, 4.0},
                                                  {2.0, 3.0, 5.0}})));

  // All the way to 0-D.
  const DataArray f0 = flatten(fb, "a");
  EXPECT_EQ(f0.dims().rank(), 0);
  EXPECT_TRUE(equals(f0.data(),
                     make_event_variable<double>(Dims{}, Unit::counts(),
                                                 {{1.0, 2.0, 3.0, 4.0,
                                                   5.0}})));
}

TEST(events, flatten_carries_variances) {
  Variable w = make_event_variable<double>({{"a", 2}}, Unit::counts(),
                                           {{1.0}, {2.0, 3.0}},
                                           {{{0.5}, {1.0, 1.5}}});
  Variable t = make_event_variable<double>({{"a", 2}}, Unit::us(),
                                           {{1.0}, {2.0, 3.0}});
  const DataArray da(std::move(w), {{"tof", std::move(t)}});
  const DataArray f = flatten(da, "a");
  ASSERT_TRUE(f.data().has_variances());
  const auto &vars = f.data().event_variances<double>();
  ASSERT_EQ(vars.list_count(), 1);
  EXPECT_EQ(vars.list(0)[0], 0.5);
  EXPECT_EQ(vars.list(0)[2], 1.5);
}

TEST(events, flatten_errors) {
  const DataArray da = make_event_array();
  EXPECT_THROW(flatten(da, "nope"), DimsError);
  DataArray dense(make_variable<double>({{"s", 2}}, Unit::counts(),
                                        {1.0, 2.0}));
  EXPECT_THROW(flatten(dense, "s"), TypeError);
}

TEST(events, concatenate_appends_per_element) {
  Variable wa = make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                            {{1.0, 2.0}, {3.0}});
  Variable ta = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                            {{0.1, 0.2}, {0.3}});
  Variable wb = make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                            {{4.0}, {5.0, 6.0}});
  Variable tb = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                            {{0.4}, {0.5, 0.6}});
  Variable sc = make_variable<int64_t>({{"s", 2}}, Unit::dimensionless(),
                                       {1, 2});
  const DataArray a(std::move(wa), {{"tof", std::move(ta)}, {"s", copy(sc)}},
                    {{"left", make_variable<int64_t>(
                                  Dims{}, Unit::dimensionless(), {1})}});
  const DataArray b(std::move(wb), {{"tof", std::move(tb)}, {"s", copy(sc)}},
                    {{"right", make_variable<int64_t>(
                                   Dims{}, Unit::dimensionless(), {2})}});
  const DataArray r = event_concatenate(a, b);
  EXPECT_TRUE(equals(r.data(),
                     make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                                 {{1.0, 2.0, 4.0},
                                                  {3.0, 5.0, 6.0}})));
  EXPECT_TRUE(equals(r.coord("tof"),
                     make_event_variable<double>({{"s", 2}}, Unit::us(),
                                                 {{0.1, 0.2, 0.4},
                                                  {0.3, 0.5, 0.6}})));
  EXPECT_TRUE(equals(r.coord("s"), sc));
  EXPECT_TRUE(r.has_attr("left"));
  EXPECT_TRUE(r.has_attr("right"));
}

TEST(events, concatenate_errors) {
  const DataArray a = make_event_array();

  Variable w3 = make_event_variable<double>({{"s", 3}}, Unit::counts(),
                                            {{1.0}, {}, {}});
  Variable t3 = make_event_variable<double>({{"s", 3}}, Unit::us(),
                                            {{0.1}, {}, {}});
  const DataArray wrong_shape(std::move(w3), {{"tof", std::move(t3)}});
  EXPECT_THROW(event_concatenate(a, wrong_shape), ShapeError);

  Variable wu = make_event_variable<double>({{"s", 2}}, Unit::m(),
                                            {{1.0}, {1.0}});
  Variable tu = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                            {{0.1}, {0.2}});
  const DataArray wrong_unit(std::move(wu), {{"tof", std::move(tu)}});
  EXPECT_THROW(event_concatenate(a, wrong_unit), UnitError);

  Variable wv = make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                            {{1.0}, {1.0}},
                                            {{{0.1}, {0.1}}});
  Variable tv = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                            {{0.1}, {0.2}});
  const DataArray with_vars(std::move(wv), {{"tof", std::move(tv)}});
  EXPECT_THROW(event_concatenate(a, with_vars), TypeError);

  Variable wc = make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                            {{1.0}, {1.0}});
  Variable oc = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                            {{0.1}, {0.2}});
  const DataArray other_coord(std::move(wc), {{"energy", std::move(oc)}});
  EXPECT_THROW(event_concatenate(a, other_coord), CoordError);

  DataArray dense(make_variable<double>({{"s", 2}}, Unit::counts(),
                                        {1.0, 2.0}));
  EXPECT_THROW(event_concatenate(a, dense), TypeError);
}

TEST(events, concatenate_rejects_dense_coord_mismatch) {
  Variable sc1 = make_variable<int64_t>({{"s", 2}}, Unit::dimensionless(),
                                        {1, 2});
  Variable sc2 = make_variable<int64_t>({{"s", 2}}, Unit::dimensionless(),
                                        {1, 3});
  auto build = [](Variable s_coord) {
    Variable w = make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                             {{1.0}, {1.0}});
    Variable t = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                             {{0.1}, {0.2}});
    return DataArray(std::move(w),
                     {{"tof", std::move(t)}, {"s", std::move(s_coord)}});
  };
  EXPECT_THROW(event_concatenate(build(std::move(sc1)),
                                 build(std::move(sc2))),
               CoordError);
}

TEST(events, dense_op_on_data) {
  const DataArray da = make_event_array();
  // Scale each spectrum's weights by a per-spectrum dense factor.
  Variable factor = make_variable<double>({{"s", 2}}, Unit::dimensionless(),
                                          {2.0, 10.0});
  const DataArray r = event_dense_op(da, factor, BinaryOp::Multiply, "data");
  EXPECT_TRUE(equals(r.data(),
                     make_event_variable<double>({{"s", 2}}, Unit::counts(),
                                                 {{2.0, 2.0, 2.0},
                                                  {10.0}})));
  // Coords are untouched.
  EXPECT_TRUE(equals(r.coord("tof"), da.coord("tof")));
}

TEST(events, dense_op_on_coord) {
  const DataArray da = make_event_array();
  Variable offset = make_variable<double>(Dims{}, Unit::us(), {0.25});
  const DataArray r = event_dense_op(da, offset, BinaryOp::Add, "tof");
  EXPECT_TRUE(equals(r.coord("tof"),
                     make_event_variable<double>({{"s", 2}}, Unit::us(),
                                                 {{0.75, 1.75, 1.95},
                                                  {2.75}})));
  EXPECT_TRUE(equals(r.data(), da.data()));

  // Division rescales the unit along with the values.
  Variable period = make_variable<double>(Dims{}, Unit::us(), {0.5});
  const DataArray q = event_dense_op(da, period, BinaryOp::Divide, "tof");
  EXPECT_EQ(q.coord("tof").unit(), Unit::dimensionless());
  EXPECT_EQ(q.coord("tof").event_values<double>().list(0)[0], 1.0);

  Variable shift = make_variable<double>(Dims{}, Unit::us(), {0.5});
  const DataArray m = event_dense_op(da, shift, BinaryOp::Subtract, "tof");
  EXPECT_EQ(m.coord("tof").event_values<double>().list(0)[0], 0.0);
}

TEST(events, dense_op_errors) {
  const DataArray da = make_event_array();
  Variable x = make_variable<double>(Dims{}, Unit::us(), {1.0});
  EXPECT_THROW(event_dense_op(da, x, BinaryOp::Add, "energy"), KeyError);
  // A dense coord is not a valid target.
  DataArray with_dense = copy(da.const_view());
  with_dense.set_coord("s", make_variable<int64_t>(
                                {{"s", 2}}, Unit::dimensionless(), {0, 1}));
  EXPECT_THROW(event_dense_op(with_dense, x, BinaryOp::Add, "s"), TypeError);
  // The operand must be dense.
  Variable ev = make_event_variable<double>({{"s", 2}}, Unit::us(),
                                            {{1.0}, {1.0}});
  EXPECT_THROW(event_dense_op(da, ev, BinaryOp::Add, "tof"), TypeError);
  // Unit rules still apply through the underlying operation.
  Variable wrong = make_variable<double>(Dims{}, Unit::m(), {1.0});
  EXPECT_THROW(event_dense_op(da, wrong, BinaryOp::Add, "tof"), UnitError);
}

TEST(events, histogram_flatten_duality) {
  // Summing per-spectrum histograms equals histogramming the flattened
  // events; integer-valued weights keep both sides exact.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pos(0.0, 10.0);
  std::uniform_int_distribution<int> wdist(1, 4);
  const int64_t ns = 6;
  std::vector<std::vector<double>> ws(ns), ts(ns);
  for (int64_t s = 0; s < ns; ++s) {
    for (int e = 0; e < 50; ++e) {
      ts[static_cast<size_t>(s)].push_back(pos(rng));
      ws[static_cast<size_t>(s)].push_back(static_cast<double>(wdist(rng)));
    }
  }
  const DataArray da(
      make_event_variable<double>({{"s", ns}}, Unit::counts(), ws),
      {{"tof", make_event_variable<double>({{"s", ns}}, Unit::us(), ts)}});
  const Variable edges = tof_edges({0.0, 2.0, 4.0, 6.0, 8.0, 10.0});

  const DataArray lhs = sum(histogram(da, edges), "s");
  const DataArray rhs = histogram(flatten(da, "s"), edges);
  EXPECT_EQ(lhs.dims(), rhs.dims());
  const auto lv = lhs.data().values<double>();
  const auto rv = rhs.data().values<double>();
  for (size_t i = 0; i < lv.size(); ++i)
    EXPECT_EQ(lv[i], rv[i]) << i;
}
