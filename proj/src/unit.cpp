// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/unit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

#include "larr/error.hpp"

namespace larr {

namespace {

constexpr int kPow10Range = 60;

// Scales composed along different operation orders must stay bit-identical,
// so every power of ten comes from this one table. Entries are produced by
// decimal-string conversion, matching source literals like 1e-10 exactly.
const double *pow10_table() {
  static const std::array<double, 2 * kPow10Range + 1> table = [] {
    std::array<double, 2 * kPow10Range + 1> t{};
    for (int k = -kPow10Range; k <= kPow10Range; ++k) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "1e%d", k);
      t[static_cast<size_t>(k + kPow10Range)] = std::strtod(buf, nullptr);
    }
    return t;
  }();
  return table.data();
}

std::optional<int> pow10_log(double scale) {
  const double *t = pow10_table();
  for (int k = -kPow10Range; k <= kPow10Range; ++k)
    if (t[k + kPow10Range] == scale)
      return k;
  return std::nullopt;
}

double mul_scales(double a, double b) {
  auto ka = pow10_log(a);
  auto kb = pow10_log(b);
  if (ka && kb && std::abs(*ka + *kb) <= kPow10Range)
    return pow10_exact(*ka + *kb);
  return a * b;
}

double div_scales(double a, double b) {
  auto ka = pow10_log(a);
  auto kb = pow10_log(b);
  if (ka && kb && std::abs(*ka - *kb) <= kPow10Range)
    return pow10_exact(*ka - *kb);
  return a / b;
}

double pow_scale(double a, int n) {
  if (auto k = pow10_log(a); k && std::abs(*k * n) <= kPow10Range)
    return pow10_exact(*k * n);
  double r = 1.0;
  for (int i = 0; i < std::abs(n); ++i)
    r *= a;
  return n < 0 ? 1.0 / r : r;
}

double sqrt_scale(double a) {
  if (auto k = pow10_log(a); k && *k % 2 == 0)
    return pow10_exact(*k / 2);
  return std::sqrt(a);
}

int8_t checked_exp(int value, const char *op) {
  if (value < INT8_MIN || value > INT8_MAX)
    throw UnitOverflowError(std::string("unit exponent overflow in ") + op);
  return static_cast<int8_t>(value);
}

UnitExponents base_dim(int i) {
  UnitExponents e{};
  e[static_cast<size_t>(i)] = 1;
  return e;
}

enum BaseDim { kMeter = 0, kKilogram, kSecond, kAmpere, kKelvin, kMole, kCandela };

} // namespace

double pow10_exact(int k) { return pow10_table()[k + kPow10Range]; }

Unit::Unit(double scale, const UnitExponents &exps) : scale_(scale), exps_(exps) {
  if (!(scale > 0.0))
    throw UnitError("unit scale must be positive");
}

Unit::Unit(double scale, const UnitExponents &exps, std::string display)
    : scale_(scale), exps_(exps), display_(std::move(display)) {}

Unit operator*(const Unit &a, const Unit &b) {
  UnitExponents e{};
  for (size_t i = 0; i < kNumBaseDims; ++i)
    e[i] = checked_exp(int(a.exps_[i]) + int(b.exps_[i]), "multiply");
  return Unit(mul_scales(a.scale_, b.scale_), e);
}

Unit operator/(const Unit &a, const Unit &b) {
  UnitExponents e{};
  for (size_t i = 0; i < kNumBaseDims; ++i)
    e[i] = checked_exp(int(a.exps_[i]) - int(b.exps_[i]), "divide");
  return Unit(div_scales(a.scale_, b.scale_), e);
}

Unit Unit::pow(int n) const {
  if (n == 0)
    return Unit();
  UnitExponents e{};
  for (size_t i = 0; i < kNumBaseDims; ++i)
    e[i] = checked_exp(int(exps_[i]) * n, "pow");
  return Unit(pow_scale(scale_, n), e);
}

Unit Unit::sqrt() const {
  UnitExponents e{};
  for (size_t i = 0; i < kNumBaseDims; ++i) {
    if (exps_[i] % 2 != 0)
      throw UnitError("sqrt of unit " + format() + " requires even exponents");
    e[i] = static_cast<int8_t>(exps_[i] / 2);
  }
  return Unit(sqrt_scale(scale_), e);
}

struct UnitTable {
  static std::vector<NamedUnit> build() {
    std::vector<NamedUnit> t;
    auto add = [&](const char *sym, double scale, UnitExponents exps) {
      t.push_back({sym, Unit(scale, exps, sym)});
    };
    add("dimensionless", 1.0, {});
    add("m", 1.0, base_dim(kMeter));
    add("kg", 1.0, base_dim(kKilogram));
    add("s", 1.0, base_dim(kSecond));
    add("A", 1.0, base_dim(kAmpere));
    add("K", 1.0, base_dim(kKelvin));
    add("mol", 1.0, base_dim(kMole));
    add("cd", 1.0, base_dim(kCandela));
    add("us", pow10_exact(-6), base_dim(kSecond));
    add("angstrom", pow10_exact(-10), base_dim(kMeter));
    // Display-distinct aliases of dimensionless; comparisons ignore the name.
    add("counts", 1.0, {});
    add("rad", 1.0, {});
    return t;
  }
};

std::span<const NamedUnit> unit_table() {
  static const std::vector<NamedUnit> table = UnitTable::build();
  return table;
}

Unit Unit::dimensionless() { return parse("dimensionless"); }
Unit Unit::counts() { return parse("counts"); }
Unit Unit::rad() { return parse("rad"); }
Unit Unit::m() { return parse("m"); }
Unit Unit::kg() { return parse("kg"); }
Unit Unit::s() { return parse("s"); }
Unit Unit::K() { return parse("K"); }
Unit Unit::angstrom() { return parse("angstrom"); }
Unit Unit::us() { return parse("us"); }

namespace {

const NamedUnit *find_symbol(std::string_view sym) {
  for (const auto &entry : unit_table())
    if (entry.symbol == sym)
      return &entry;
  return nullptr;
}

struct Token {
  std::string symbol;
  int exponent = 1;
};

// SYMBOL('^'INT)? — symbol chars are alphabetic.
Token parse_factor(std::string_view text, size_t &pos) {
  size_t start = pos;
  while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos]))))
    ++pos;
  if (pos == start)
    throw ParseError("expected unit symbol at offset " + std::to_string(start) +
                     " in '" + std::string(text) + "'");
  Token tok;
  tok.symbol = std::string(text.substr(start, pos - start));
  if (pos < text.size() && text[pos] == '^') {
    ++pos;
    size_t num_start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
      ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == num_start || (pos - num_start == 1 && !std::isdigit(static_cast<unsigned char>(text[num_start]))))
      throw ParseError("expected integer exponent after '^' in '" + std::string(text) + "'");
    tok.exponent = std::atoi(std::string(text.substr(num_start, pos - num_start)).c_str());
  }
  return tok;
}

} // namespace

Unit Unit::parse(std::string_view text) {
  if (text.empty())
    throw ParseError("empty unit string");
  size_t pos = 0;
  Token first = parse_factor(text, pos);
  const NamedUnit *entry = find_symbol(first.symbol);
  if (!entry)
    throw ParseError("unknown unit symbol '" + first.symbol + "'");
  // A single bare symbol keeps its display name.
  if (pos == text.size() && first.exponent == 1)
    return entry->unit;

  Unit result = entry->unit.pow(first.exponent);
  bool dividing = false;
  while (pos < text.size()) {
    char sep = text[pos];
    if (sep == '*' && !dividing) {
      ++pos;
    } else if (sep == '/') {
      dividing = true;
      ++pos;
    } else {
      throw ParseError(std::string("unexpected character '") + sep + "' at offset " +
                       std::to_string(pos) + " in '" + std::string(text) + "'");
    }
    Token tok = parse_factor(text, pos);
    const NamedUnit *e = find_symbol(tok.symbol);
    if (!e)
      throw ParseError("unknown unit symbol '" + tok.symbol + "'");
    Unit factor = e->unit.pow(tok.exponent);
    result = dividing ? result / factor : result * factor;
  }
  return Unit(result.scale_, result.exps_);
}

namespace {

// One formatting slot per table symbol that carries a single base dimension.
struct SymbolSlot {
  const char *symbol;
  int dim;
  int scale_log10; // log10 of the symbol's scale
};

// Canonical emission order. Scaled symbols come first inside a dimension so
// "angstrom^2" wins over "m^2" when the scale demands it.
constexpr SymbolSlot kSlots[] = {
    {"angstrom", kMeter, -10}, {"m", kMeter, 0},   {"kg", kKilogram, 0},
    {"us", kSecond, -6},       {"s", kSecond, 0},  {"A", kAmpere, 0},
    {"K", kKelvin, 0},         {"mol", kMole, 0},  {"cd", kCandela, 0},
};

std::string emit(const std::vector<std::pair<std::string, int>> &factors) {
  std::string num;
  std::string den;
  for (const auto &[sym, exp] : factors) {
    if (exp > 0) {
      if (!num.empty())
        num += '*';
      num += sym;
      if (exp != 1)
        num += '^' + std::to_string(exp);
    } else if (exp < 0) {
      den += '/';
      den += sym;
      if (exp != -1)
        den += '^' + std::to_string(-exp);
    }
  }
  if (num.empty())
    num = "dimensionless";
  return num + den;
}

} // namespace

std::string Unit::format() const {
  // Prefer the unit's own display name when it still matches a table entry.
  if (!display_.empty()) {
    if (const NamedUnit *e = find_symbol(display_); e && e->unit == *this)
      return display_;
  }
  for (const auto &entry : unit_table())
    if (entry.unit == *this)
      return entry.symbol;

  auto k_opt = pow10_log(scale_);
  if (!k_opt)
    throw UnitError("unit scale is not a power of ten and has no symbol");
  const int k = *k_opt;

  // Split each base-dim exponent between the scaled symbol (q) and the plain
  // one (p = e - q); angstrom and us are the only scaled carriers. Their
  // powers must absorb the whole scale: -10*q_angstrom - 6*q_us == k.
  int best_qa = 0, best_qu = 0, best_cost = -1;
  for (int qa = -32; qa <= 32; ++qa) {
    int rem = k + 10 * qa;
    if (rem % 6 != 0)
      continue;
    int qu = -rem / 6;
    int cost = std::abs(qa) + std::abs(qu);
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best_qa = qa;
      best_qu = qu;
    }
  }
  if (best_cost < 0)
    throw UnitError("unit scale 1e" + std::to_string(k) + " is not expressible with named symbols");

  std::vector<std::pair<std::string, int>> factors;
  for (const auto &slot : kSlots) {
    int e = exps_[static_cast<size_t>(slot.dim)];
    int q = 0;
    if (slot.scale_log10 == -10)
      q = best_qa;
    else if (slot.scale_log10 == -6)
      q = best_qu;
    else if (slot.dim == kMeter)
      e -= best_qa; // plain m takes what angstrom did not
    else if (slot.dim == kSecond)
      e -= best_qu;
    if (slot.scale_log10 != 0)
      factors.emplace_back(slot.symbol, q);
    else
      factors.emplace_back(slot.symbol, e);
  }
  return emit(factors);
}

std::string to_string(const Unit &u) {
  try {
    return u.format();
  } catch (const UnitError &) {
    std::string out = "unit(scale=" + std::to_string(u.scale()) + ", exps=[";
    for (int i = 0; i < kNumBaseDims; ++i) {
      if (i)
        out += ',';
      out += std::to_string(int(u.exponents()[i]));
    }
    return out + "])";
  }
}

} // namespace larr
