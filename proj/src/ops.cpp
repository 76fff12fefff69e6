// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/ops.hpp"

#include <cmath>

namespace larr {

Variable add(const VariableConstView &a, const VariableConstView &b) {
  return transform("add", kernels::plus{}, a, b);
}
Variable subtract(const VariableConstView &a, const VariableConstView &b) {
  return transform("subtract", kernels::minus{}, a, b);
}
Variable multiply(const VariableConstView &a, const VariableConstView &b) {
  return transform("multiply", kernels::times{}, a, b);
}
Variable divide(const VariableConstView &a, const VariableConstView &b) {
  return transform("divide", kernels::divide{}, a, b);
}

void add_in_place(Variable &a, const VariableConstView &b) {
  transform_in_place("add", kernels::plus{}, a, b);
}
void add_in_place(VariableView a, const VariableConstView &b) {
  transform_in_place("add", kernels::plus{}, a, b);
}
void subtract_in_place(Variable &a, const VariableConstView &b) {
  transform_in_place("subtract", kernels::minus{}, a, b);
}
void subtract_in_place(VariableView a, const VariableConstView &b) {
  transform_in_place("subtract", kernels::minus{}, a, b);
}
void multiply_in_place(Variable &a, const VariableConstView &b) {
  transform_in_place("multiply", kernels::times{}, a, b);
}
void multiply_in_place(VariableView a, const VariableConstView &b) {
  transform_in_place("multiply", kernels::times{}, a, b);
}
void divide_in_place(Variable &a, const VariableConstView &b) {
  transform_in_place("divide", kernels::divide{}, a, b);
}
void divide_in_place(VariableView a, const VariableConstView &b) {
  transform_in_place("divide", kernels::divide{}, a, b);
}

Variable sqrt(const VariableConstView &v) {
  return transform("sqrt", kernels::sqrt_op{}, v);
}
Variable abs(const VariableConstView &v) {
  return transform("abs", kernels::abs_op{}, v);
}
Variable sin(const VariableConstView &v) {
  return transform("sin", kernels::sin_op{}, v);
}
Variable cos(const VariableConstView &v) {
  return transform("cos", kernels::cos_op{}, v);
}

Variable compare_eq(const VariableConstView &a, const VariableConstView &b) {
  return transform("compare_eq", kernels::equal{}, a, b);
}
Variable compare_lt(const VariableConstView &a, const VariableConstView &b) {
  return transform("compare_lt", kernels::less{}, a, b);
}

namespace {

bool is_dense_numeric(DType d) {
  return d == DType::Float64 || d == DType::Float32 || d == DType::Int64 ||
         d == DType::Int32;
}

template <class T>
Buffer<T> reduce_sum(const VariableConstView &v, int dpos, bool variances,
                     const Dims &odims) {
  const int64_t dstride = v.strides()[static_cast<size_t>(dpos)];
  const int64_t dextent = v.dims().extent(dpos);
  std::vector<int64_t> ostrides = v.strides();
  ostrides.erase(ostrides.begin() + dpos);
  Buffer<T> out(odims.volume());
  T *o = out.data();
  const T *base = variances ? v.variances_base<T>() : v.values_base<T>();
  int64_t oi = 0;
  detail::strided_rows<1>(odims, {v.offset()}, {ostrides},
                          [&](const std::array<int64_t, 1> &pos, int64_t n,
                              const std::array<int64_t, 1> &istr) {
                            for (int64_t i = 0; i < n; ++i) {
                              const int64_t e = pos[0] + i * istr[0];
                              T acc{};
                              for (int64_t j = 0; j < dextent; ++j)
                                acc += base[e + j * dstride];
                              o[oi++] = acc;
                            }
                          });
  return out;
}

} // namespace

Variable sum(const VariableConstView &v, const std::string &dim) {
  const int d = v.dims().require(dim);
  if (!is_dense_numeric(v.dtype()))
    throw TypeError("sum: requires dense numeric data, got dtype " +
                    std::string(to_string(v.dtype())));
  const Dims odims = v.dims().erased(d);
  return visit_dense_dtype(v.dtype(), [&](auto tag) -> Variable {
    using T = typename decltype(tag)::type;
    if constexpr (std::is_arithmetic_v<T> && !std::is_same_v<T, bool>) {
      Buffer<T> values = reduce_sum<T>(v, d, false, odims);
      std::optional<Storage> variances;
      if (v.has_variances())
        variances = reduce_sum<T>(v, d, true, odims);
      return Variable(odims, v.unit(), std::move(values),
                      std::move(variances));
    } else {
      throw TypeError("sum: requires dense numeric data");
    }
  });
}

Variable mean(const VariableConstView &v, const std::string &dim) {
  if (v.dtype() != DType::Float64 && v.dtype() != DType::Float32)
    throw TypeError("mean: requires floating-point data, got dtype " +
                    std::string(to_string(v.dtype())));
  const double n = static_cast<double>(v.dims().extent(v.dims().require(dim)));
  Variable out = sum(v, dim);
  auto scale = [&](auto tag) {
    using T = typename decltype(tag)::type;
    for (T &x : out.values<T>())
      x = static_cast<T>(x / n);
    if (out.has_variances())
      for (T &x : out.variances<T>())
        x = static_cast<T>(x / (n * n));
  };
  if (out.dtype() == DType::Float64)
    scale(std::type_identity<double>{});
  else
    scale(std::type_identity<float>{});
  return out;
}

namespace {

// Row-major walk producing the logical index vector for each element.
template <class F> void for_each_logical(const Dims &dims, F &&f) {
  const int64_t n = dims.volume();
  if (n == 0)
    return;
  std::vector<int64_t> idx(static_cast<size_t>(dims.rank()), 0);
  for (int64_t count = 0;;) {
    f(idx);
    if (++count == n)
      break;
    for (int d = dims.rank() - 1; d >= 0; --d) {
      if (++idx[d] < dims.extent(d))
        break;
      idx[d] = 0;
    }
  }
}

int64_t position_of(const VariableConstView &v,
                    const std::vector<int64_t> &idx) {
  int64_t pos = v.offset();
  for (size_t i = 0; i < idx.size(); ++i)
    pos += idx[i] * v.strides()[i];
  return pos;
}

// Appends, per output element, the value taken from a or b. `source_index`
// maps the output logical index to (which operand, its logical index).
template <class Pick>
Variable concat_gather(const Dims &odims, const VariableConstView &a,
                       const VariableConstView &b, Pick &&pick) {
  const DType t = a.dtype();
  std::vector<int64_t> src_idx;
  auto gather = [&](auto tag, bool variances) -> Storage {
    using T = typename decltype(tag)::type;
    Buffer<T> out(odims.volume());
    T *o = out.data();
    int64_t oi = 0;
    for_each_logical(odims, [&](const std::vector<int64_t> &idx) {
      const VariableConstView &src = pick(idx, src_idx) ? b : a;
      const T *base = variances ? src.variances_base<T>() : src.values_base<T>();
      o[oi++] = base[position_of(src, src_idx)];
    });
    return out;
  };
  auto gather_ev = [&](auto tag, bool variances) -> Storage {
    using T = typename decltype(tag)::type;
    EventStorage<T> out;
    for_each_logical(odims, [&](const std::vector<int64_t> &idx) {
      const VariableConstView &src = pick(idx, src_idx) ? b : a;
      const EventStorage<T> &st =
          variances ? src.event_variances<T>() : src.event_values<T>();
      out.append_list(st.list(position_of(src, src_idx)));
    });
    return out;
  };
  Storage values = is_event(t)
                       ? visit_event_dtype(
                             t, [&](auto tag) { return gather_ev(tag, false); })
                       : visit_dense_dtype(
                             t, [&](auto tag) { return gather(tag, false); });
  std::optional<Storage> variances;
  if (a.has_variances())
    variances = is_event(t)
                    ? visit_event_dtype(
                          t, [&](auto tag) { return gather_ev(tag, true); })
                    : visit_dense_dtype(
                          t, [&](auto tag) { return gather(tag, true); });
  return Variable(odims, a.unit(), std::move(values), std::move(variances));
}

} // namespace

Variable concatenate(const VariableConstView &a, const VariableConstView &b,
                     const std::string &dim) {
  if (a.dtype() != b.dtype())
    throw TypeError("concatenate: dtype " + std::string(to_string(a.dtype())) +
                    " does not match dtype " +
                    std::string(to_string(b.dtype())));
  if (a.unit() != b.unit())
    throw UnitError("concatenate: units " + to_string(a.unit()) + " and " +
                    to_string(b.unit()) + " do not match");
  if (a.has_variances() != b.has_variances())
    throw TypeError("concatenate: variance presence does not match");
  const bool in_a = a.dims().contains(dim);
  const bool in_b = b.dims().contains(dim);
  if (in_a != in_b)
    throw ShapeError("concatenate: dim '" + dim +
                     "' present in only one operand");
  if (in_a) {
    if (a.dims().labels() != b.dims().labels())
      throw ShapeError("concatenate: dims " + a.dims().to_string() + " and " +
                       b.dims().to_string() + " do not match");
    const int d = a.dims().require(dim);
    for (int i = 0; i < a.dims().rank(); ++i)
      if (i != d && a.dims().extent(i) != b.dims().extent(i))
        throw ShapeError("concatenate: extent of dim '" + a.dims().label(i) +
                         "' differs: " + std::to_string(a.dims().extent(i)) +
                         " vs " + std::to_string(b.dims().extent(i)));
    const int64_t split = a.dims().extent(d);
    Dims odims;
    for (int i = 0; i < a.dims().rank(); ++i)
      odims.push_back(a.dims().label(i),
                      i == d ? split + b.dims().extent(d)
                             : a.dims().extent(i));
    return concat_gather(
        odims, a, b,
        [&, d, split](const std::vector<int64_t> &idx,
                      std::vector<int64_t> &src_idx) {
          src_idx = idx;
          if (idx[static_cast<size_t>(d)] < split)
            return false;
          src_idx[static_cast<size_t>(d)] -= split;
          return true;
        });
  }
  if (a.dims() != b.dims())
    throw ShapeError("concatenate: dims " + a.dims().to_string() + " and " +
                     b.dims().to_string() + " do not match");
  Dims odims;
  odims.push_back(dim, 2);
  for (int i = 0; i < a.dims().rank(); ++i)
    odims.push_back(a.dims().label(i), a.dims().extent(i));
  return concat_gather(odims, a, b,
                       [](const std::vector<int64_t> &idx,
                          std::vector<int64_t> &src_idx) {
                         src_idx.assign(idx.begin() + 1, idx.end());
                         return idx[0] == 1;
                       });
}

} // namespace larr
