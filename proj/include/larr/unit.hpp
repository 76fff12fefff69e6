// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace larr {

/// Number of SI base dimensions tracked per unit (m, kg, s, A, K, mol, cd).
inline constexpr int kNumBaseDims = 7;

using UnitExponents = std::array<int8_t, kNumBaseDims>;

/// Runtime physical unit: a decimal scale to coherent SI plus one small
/// signed exponent per base dimension. Units are immutable values.
///
/// Two units are *compatible* iff their exponent vectors are equal; they are
/// *equal* iff additionally their scales are exactly equal. A display name
/// ("counts", "rad") may ride along for formatting but never takes part in
/// comparisons.
class Unit {
public:
  /// Dimensionless, scale 1.
  Unit() : scale_(1.0), exps_{} {}

  /// Arbitrary unit; scale must be positive.
  Unit(double scale, const UnitExponents &exps);

  double scale() const { return scale_; }
  const UnitExponents &exponents() const { return exps_; }
  const std::string &display() const { return display_; }

  bool compatible(const Unit &other) const { return exps_ == other.exps_; }

  friend bool operator==(const Unit &a, const Unit &b) {
    return a.exps_ == b.exps_ && a.scale_ == b.scale_;
  }
  friend bool operator!=(const Unit &a, const Unit &b) { return !(a == b); }

  friend Unit operator*(const Unit &a, const Unit &b);
  friend Unit operator/(const Unit &a, const Unit &b);

  /// Integer power; n = 0 yields dimensionless scale 1.
  Unit pow(int n) const;

  /// Square root; every exponent must be even.
  Unit sqrt() const;

  /// Render in the textual unit grammar. Prefers a single table symbol,
  /// otherwise a product/quotient of table symbols. Throws UnitError if the
  /// unit cannot be expressed with the named symbols.
  std::string format() const;

  /// Parse `SYMBOL('^'INT)? ('*' SYMBOL('^'INT)?)* ('/' SYMBOL('^'INT)?)*`.
  static Unit parse(std::string_view text);

  // Named units. Construction goes through the symbol table so scales are
  // bit-identical with parsed text.
  static Unit dimensionless();
  static Unit counts();
  static Unit rad();
  static Unit m();
  static Unit kg();
  static Unit s();
  static Unit K();
  static Unit angstrom();
  static Unit us();

private:
  friend struct UnitTable;
  Unit(double scale, const UnitExponents &exps, std::string display);

  double scale_;
  UnitExponents exps_;
  std::string display_; // preferred symbol, empty unless from table/parse
};

struct NamedUnit {
  std::string symbol;
  Unit unit;
};

/// The fixed symbol table backing parse/format.
std::span<const NamedUnit> unit_table();

/// Non-throwing description for error messages: format() when expressible,
/// otherwise the raw scale and exponent vector.
std::string to_string(const Unit &u);

/// Exact power of ten used for all scale arithmetic; |k| <= 60.
double pow10_exact(int k);

} // namespace larr
