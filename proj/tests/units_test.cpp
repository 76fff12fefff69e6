// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include <gtest/gtest.h>

#include <vector>

#include "larr/error.hpp"
#include "larr/unit.hpp"

using namespace larr;

TEST(Unit, default_is_dimensionless) {
  const Unit u;
  EXPECT_EQ(u.scale(), 1.0);
  for (int e : u.exponents())
    EXPECT_EQ(e, 0);
  EXPECT_EQ(u, Unit::dimensionless());
}

TEST(Unit, scale_must_be_positive) {
  EXPECT_THROW(Unit(0.0, UnitExponents{}), UnitError);
  EXPECT_THROW(Unit(-1.0, UnitExponents{}), UnitError);
}

TEST(Unit, mul_composes_exps_and_scale) {
  const Unit m2 = Unit::m() * Unit::m();
  EXPECT_EQ(m2.scale(), 1.0);
  EXPECT_EQ(m2.exponents(), (UnitExponents{2, 0, 0, 0, 0, 0, 0}));

  EXPECT_EQ(Unit::us() * Unit::dimensionless(), Unit::us());

  const Unit a2 = Unit::angstrom() * Unit::angstrom();
  EXPECT_EQ(a2.scale(), 1e-20);
  EXPECT_EQ(a2.exponents(), (UnitExponents{2, 0, 0, 0, 0, 0, 0}));
}

TEST(Unit, div_composes) {
  const Unit v = Unit::m() / Unit::s();
  EXPECT_EQ(v.exponents(), (UnitExponents{1, 0, -1, 0, 0, 0, 0}));
  EXPECT_EQ(v.scale(), 1.0);

  EXPECT_EQ(Unit::counts() / Unit::counts(), Unit::dimensionless());

  const Unit r = Unit::angstrom() / Unit::m();
  EXPECT_EQ(r.exponents(), UnitExponents{});
  EXPECT_EQ(r.scale(), 1e-10);
}

TEST(Unit, pow) {
  EXPECT_EQ(Unit::m().pow(2), Unit::m() * Unit::m());
  EXPECT_EQ(Unit::us().pow(0), Unit::dimensionless());
  EXPECT_EQ(Unit::angstrom().pow(0), Unit::dimensionless());
  const Unit us2 = Unit::us().pow(2);
  EXPECT_EQ(us2.scale(), 1e-12);
  EXPECT_EQ(us2.exponents(), (UnitExponents{0, 0, 2, 0, 0, 0, 0}));
  EXPECT_EQ(Unit::m().pow(-1).exponents(),
            (UnitExponents{-1, 0, 0, 0, 0, 0, 0}));
}

TEST(Unit, exponent_overflow) {
  Unit big = Unit::m();
  for (int i = 0; i < 6; ++i)
    big = big * big; // m^64
  EXPECT_THROW(big * big, UnitOverflowError); // m^128 > 127
  EXPECT_THROW(big.pow(2), UnitOverflowError);
  Unit inv = Unit::dimensionless() / big; // m^-64
  EXPECT_NO_THROW(inv * inv);             // m^-128 is in range
  EXPECT_THROW((inv * inv) / Unit::m(), UnitOverflowError);
}

TEST(Unit, sqrt) {
  EXPECT_EQ((Unit::m() * Unit::m()).sqrt(), Unit::m());
  EXPECT_THROW(Unit::m().sqrt(), UnitError);
  EXPECT_EQ((Unit::angstrom() * Unit::angstrom()).sqrt(), Unit::angstrom());
}

TEST(Unit, compatible_vs_equal) {
  EXPECT_TRUE(Unit::angstrom().compatible(Unit::m()));
  EXPECT_NE(Unit::angstrom(), Unit::m());
  EXPECT_FALSE(Unit::m().compatible(Unit::s()));
  // display-only aliases compare equal to dimensionless
  EXPECT_EQ(Unit::counts(), Unit::dimensionless());
  EXPECT_EQ(Unit::rad(), Unit::dimensionless());
}

TEST(Unit, parse_table_entries) {
  EXPECT_EQ(Unit::parse("angstrom").scale(), 1e-10);
  EXPECT_EQ(Unit::parse("angstrom").exponents(),
            (UnitExponents{1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(Unit::parse("m"), Unit::m());
  EXPECT_EQ(Unit::parse("dimensionless"), Unit::dimensionless());
  EXPECT_EQ(Unit::parse("us"), Unit::us());
}

TEST(Unit, parse_composite) {
  const Unit u = Unit::parse("m/s^2");
  EXPECT_EQ(u.exponents(), (UnitExponents{1, 0, -2, 0, 0, 0, 0}));
  EXPECT_EQ(u.scale(), 1.0);
  EXPECT_EQ(Unit::parse("m*m"), Unit::m().pow(2));
  EXPECT_EQ(Unit::parse("counts/us"), Unit::counts() / Unit::us());
  EXPECT_EQ(Unit::parse("m^2/s"), Unit::m().pow(2) / Unit::s());
}

TEST(Unit, parse_unknown_symbol) {
  EXPECT_THROW(Unit::parse("furlong"), ParseError);
  EXPECT_THROW(Unit::parse("m/furlong"), ParseError);
  EXPECT_THROW(Unit::parse(""), ParseError);
  EXPECT_THROW(Unit::parse("m**s"), ParseError);
}

TEST(Unit, format_prefers_symbol) {
  EXPECT_EQ(Unit::m().format(), "m");
  EXPECT_EQ(Unit::counts().format(), "counts");
  EXPECT_EQ(Unit::rad().format(), "rad");
  EXPECT_EQ(Unit::dimensionless().format(), "dimensionless");
  EXPECT_EQ(Unit::angstrom().format(), "angstrom");
}

TEST(Unit, format_composites) {
  EXPECT_EQ((Unit::m() / Unit::s()).format(), "m/s");
  EXPECT_EQ((Unit::counts() / Unit::counts()).format(), "dimensionless");
  EXPECT_EQ((Unit::m() * Unit::s()).format(), "m*s");
  EXPECT_EQ(Unit::us().pow(2).format(), "us^2");
  EXPECT_EQ((Unit::angstrom() / Unit::m()).format(), "angstrom/m");
  EXPECT_EQ((Unit::angstrom() * Unit::angstrom()).format(), "angstrom^2");
}

TEST(Unit, mul_commutative_and_associative_exps) {
  const auto table = unit_table();
  for (const auto &a : table)
    for (const auto &b : table) {
      EXPECT_EQ((a.unit * b.unit).exponents(),
                (b.unit * a.unit).exponents());
      EXPECT_EQ((a.unit * b.unit).scale(), (b.unit * a.unit).scale());
      for (const auto &c : table)
        EXPECT_EQ(((a.unit * b.unit) * c.unit).exponents(),
                  (a.unit * (b.unit * c.unit)).exponents());
    }
}

TEST(Unit, div_of_mul_recovers) {
  const auto table = unit_table();
  for (const auto &a : table)
    for (const auto &b : table)
      EXPECT_EQ((a.unit * b.unit) / b.unit, a.unit)
          << a.symbol << " * " << b.symbol;
}

TEST(Unit, sqrt_of_square_recovers) {
  const auto table = unit_table();
  for (const auto &a : table)
    EXPECT_EQ(a.unit.pow(2).sqrt(), a.unit) << a.symbol;
}

// parse(format(u)) must reproduce u exactly — scale included — for every
// product/quotient/power of table entries up to exponent +-4.
TEST(Unit, parse_format_identity_on_closure) {
  const auto table = unit_table();
  std::vector<Unit> closure;
  for (const auto &a : table)
    for (const auto &b : table) {
      closure.push_back(a.unit * b.unit);
      closure.push_back(a.unit / b.unit);
    }
  for (const auto &a : table)
    for (int n = -4; n <= 4; ++n)
      closure.push_back(a.unit.pow(n));
  ASSERT_GE(closure.size(), 200u);
  for (const Unit &u : closure) {
    const std::string text = u.format();
    const Unit back = Unit::parse(text);
    EXPECT_EQ(back, u) << text;
  }
}
