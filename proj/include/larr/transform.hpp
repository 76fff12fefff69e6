// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "larr/value_and_variance.hpp"
#include "larr/variable.hpp"

namespace larr {

/// How each input's index space maps into the common output index space.
struct BroadcastPlan {
  Dims output;
  /// Per input, one stride per output dim into that input's own row-major
  /// buffer; 0 marks a dim the input is broadcast over.
  std::vector<std::vector<int64_t>> strides;
};

/// Output dims are the first input's dims in order, followed by dims unique
/// to later inputs in their own order. Shared labels must agree in extent.
BroadcastPlan plan_broadcast(std::span<const Dims> inputs);

namespace detail {

template <class K> constexpr bool kernel_propagates() {
  if constexpr (requires { K::propagates_variances; })
    return K::propagates_variances;
  else
    return true;
}

template <class T> struct element_scalar {
  using type = T;
};
template <class T> struct element_scalar<event_list<T>> {
  using type = T;
};
template <class T> using element_scalar_t = typename element_scalar<T>::type;

template <class T> inline constexpr bool is_event_marker = false;
template <class T> inline constexpr bool is_event_marker<event_list<T>> = true;

// -1: none; -2: more than one (rejected at compile time).
template <class Combo, size_t... Is>
constexpr int event_index_impl(std::index_sequence<Is...>) {
  int idx = -1;
  ((is_event_marker<std::tuple_element_t<Is, Combo>>
        ? (idx = idx == -1 ? int(Is) : -2)
        : 0),
   ...);
  return idx;
}
template <class Combo> constexpr int event_index() {
  return event_index_impl<Combo>(
      std::make_index_sequence<std::tuple_size_v<Combo>>{});
}

template <class Combo, size_t... Is>
constexpr std::array<DType, sizeof...(Is)>
combo_dtypes_impl(std::index_sequence<Is...>) {
  return {dtype_of<std::tuple_element_t<Is, Combo>>...};
}
template <class Combo> constexpr auto combo_dtypes() {
  return combo_dtypes_impl<Combo>(
      std::make_index_sequence<std::tuple_size_v<Combo>>{});
}

template <size_t N>
[[noreturn]] void throw_combo_error(std::string_view name,
                                    const std::array<DType, N> &actual) {
  std::string msg(name);
  msg += ": unsupported type combination (";
  for (size_t i = 0; i < N; ++i) {
    if (i)
      msg += ", ";
    msg += to_string(actual[i]);
  }
  msg += ")";
  throw TypeError(msg);
}

/// Runs `run.operator()<Combo>()` for the first combo in the Combos tuple
/// whose dtypes equal `actual`. Returns false when nothing matches.
template <class Combos, size_t N, class F>
bool dispatch_combo(const std::array<DType, N> &actual, F &&run) {
  bool matched = false;
  auto try_one = [&]<size_t C>() {
    using Combo = std::tuple_element_t<C, Combos>;
    if constexpr (std::tuple_size_v<Combo> == N) {
      if (!matched && combo_dtypes<Combo>() == actual) {
        matched = true;
        run.template operator()<Combo>();
      }
    }
  };
  [&]<size_t... Cs>(std::index_sequence<Cs...>) {
    (try_one.template operator()<Cs>(), ...);
  }(std::make_index_sequence<std::tuple_size_v<Combos>>{});
  return matched;
}

/// Strides of `v` re-expressed per output dim (0 where broadcast).
std::vector<int64_t> compose_strides(const Dims &odims,
                                     const VariableConstView &v);

/// Walks the output index space row by row (innermost dim = one row) and
/// calls body(cursor positions, row length, per-cursor inner strides).
template <size_t N, class Body>
void strided_rows(const Dims &odims, const std::array<int64_t, N> &offsets,
                  const std::array<std::vector<int64_t>, N> &strides,
                  Body &&body) {
  const int64_t total = odims.volume();
  if (total == 0)
    return;
  const int rank = odims.rank();
  const int64_t inner = rank ? odims.extent(rank - 1) : 1;
  std::array<int64_t, N> istr{};
  for (size_t c = 0; c < N; ++c)
    istr[c] = rank ? strides[c][rank - 1] : 0;
  const int64_t rows = total / inner;
  std::array<int64_t, N> pos = offsets;
  std::vector<int64_t> idx(rank > 1 ? rank - 1 : 0, 0);
  for (int64_t r = 0;;) {
    body(pos, inner, istr);
    if (++r == rows)
      break;
    for (int d = rank - 2; d >= 0; --d) {
      for (size_t c = 0; c < N; ++c)
        pos[c] += strides[c][d];
      if (++idx[d] < odims.extent(d))
        break;
      for (size_t c = 0; c < N; ++c)
        pos[c] -= strides[c][d] * odims.extent(d);
      idx[d] = 0;
    }
  }
}

template <class Kernel, size_t N, size_t... Is>
Unit output_unit(const Kernel &k, const std::array<VariableConstView, N> &in,
                 std::index_sequence<Is...>) {
  return k(in[Is].unit()...);
}

template <class Combo, class Kernel, size_t N, size_t... Is>
Variable run_dense(std::string_view name, const Kernel &k,
                   const std::array<VariableConstView, N> &in,
                   std::index_sequence<Is...> seq) {
  const std::array<Dims, N> dimses{in[Is].dims()...};
  const BroadcastPlan plan = plan_broadcast(dimses);
  const Dims &odims = plan.output;
  const Unit ounit = output_unit(k, in, seq);
  const bool with_var = kernel_propagates<Kernel>() &&
                        (in[Is].has_variances() || ...);
  const std::array<std::vector<int64_t>, N> cstrides{
      compose_strides(odims, in[Is])...};
  const std::array<int64_t, N> offs{in[Is].offset()...};
  using R = std::decay_t<decltype(k(
      std::declval<element_scalar_t<std::tuple_element_t<Is, Combo>>>()...))>;
  Buffer<R> values(odims.volume());
  R *ov = values.data();
  int64_t oi = 0;
  if (!with_var) {
    const std::tuple bases{
        in[Is].template values_base<std::tuple_element_t<Is, Combo>>()...};
    strided_rows(odims, offs, cstrides,
                 [&](const std::array<int64_t, N> &pos, int64_t n,
                     const std::array<int64_t, N> &istr) {
                   if (((istr[Is] == 1) && ...)) {
                     for (int64_t i = 0; i < n; ++i)
                       ov[oi++] = k(std::get<Is>(bases)[pos[Is] + i]...);
                   } else {
                     for (int64_t i = 0; i < n; ++i)
                       ov[oi++] =
                           k(std::get<Is>(bases)[pos[Is] + i * istr[Is]]...);
                   }
                 });
    return Variable(odims, ounit, std::move(values));
  }
  if constexpr (kernel_propagates<Kernel>() &&
                (std::is_floating_point_v<std::tuple_element_t<Is, Combo>> &&
                 ...)) {
    Buffer<R> variances(odims.volume());
    R *oe = variances.data();
    const std::tuple bases{
        in[Is].template values_base<std::tuple_element_t<Is, Combo>>()...};
    const std::tuple vbases{
        (in[Is].has_variances()
             ? in[Is].template variances_base<std::tuple_element_t<Is, Combo>>()
             : nullptr)...};
    strided_rows(
        odims, offs, cstrides,
        [&](const std::array<int64_t, N> &pos, int64_t n,
            const std::array<int64_t, N> &istr) {
          for (int64_t i = 0; i < n; ++i) {
            const auto r = k(ValueAndVariance<std::tuple_element_t<Is, Combo>>{
                std::get<Is>(bases)[pos[Is] + i * istr[Is]],
                std::get<Is>(vbases)
                    ? std::get<Is>(vbases)[pos[Is] + i * istr[Is]]
                    : std::tuple_element_t<Is, Combo>{0}}...);
            ov[oi] = r.value;
            oe[oi] = r.variance;
            ++oi;
          }
        });
    return Variable(odims, ounit, std::move(values), std::move(variances));
  } else {
    throw TypeError(std::string(name) +
                    ": variances require floating-point data");
  }
}

// Dense operands may not contribute dims beyond the event operand's: the
// output is ragged with exactly the event input's list structure.
template <size_t E, size_t N>
Dims event_output_dims(std::string_view name,
                       const std::array<VariableConstView, N> &in) {
  std::vector<Dims> ordered;
  ordered.push_back(in[E].dims());
  for (size_t i = 0; i < N; ++i)
    if (i != E)
      ordered.push_back(in[i].dims());
  const BroadcastPlan plan = plan_broadcast(ordered);
  if (plan.output != in[E].dims())
    throw ShapeError(std::string(name) +
                     ": dense operand dims must be a subset of the event "
                     "operand's dims " +
                     in[E].dims().to_string());
  return plan.output;
}

template <class Combo, size_t E, class Kernel, size_t N, size_t... Is>
Variable run_event(std::string_view name, const Kernel &k,
                   const std::array<VariableConstView, N> &in,
                   std::index_sequence<Is...> seq) {
  using ET = element_scalar_t<std::tuple_element_t<E, Combo>>;
  const Dims odims = event_output_dims<E>(name, in);
  const Unit ounit = output_unit(k, in, seq);
  const bool with_var = kernel_propagates<Kernel>() &&
                        (in[Is].has_variances() || ...);
  const std::array<std::vector<int64_t>, N> cstrides{
      compose_strides(odims, in[Is])...};
  const std::array<int64_t, N> offs{in[Is].offset()...};
  const EventStorage<ET> &ev = in[E].template event_values<ET>();
  const EventStorage<ET> *evvar =
      in[E].has_variances() ? &in[E].template event_variances<ET>() : nullptr;

  // Dense element for input I at cursor position; the event operand itself
  // is picked per list element below.
  auto dense_at = [&]<size_t I>(std::integral_constant<size_t, I>,
                                int64_t p) -> element_scalar_t<
                      std::tuple_element_t<I, Combo>> {
    if constexpr (I == E)
      return {};
    else
      return in[I].template values_base<std::tuple_element_t<I, Combo>>()[p];
  };
  auto dense_var_at = [&]<size_t I>(std::integral_constant<size_t, I>,
                                    int64_t p) -> element_scalar_t<
                          std::tuple_element_t<I, Combo>> {
    if constexpr (I == E)
      return {};
    else
      return in[I].has_variances()
                 ? in[I].template variances_base<
                       std::tuple_element_t<I, Combo>>()[p]
                 : std::tuple_element_t<I, Combo>{0};
  };

  using R = std::decay_t<decltype(k(
      std::declval<element_scalar_t<std::tuple_element_t<Is, Combo>>>()...))>;
  EventStorage<R> values;
  values.offsets.reserve(odims.volume() + 1);
  values.flat.reserve(ev.flat.size());
  if (!with_var) {
    strided_rows(odims, offs, cstrides,
                 [&](const std::array<int64_t, N> &pos, int64_t n,
                     const std::array<int64_t, N> &istr) {
                   for (int64_t i = 0; i < n; ++i) {
                     const auto list = ev.list(pos[E] + i * istr[E]);
                     const std::tuple dense{dense_at(
                         std::integral_constant<size_t, Is>{},
                         pos[Is] + i * istr[Is])...};
                     for (const ET &e : list)
                       values.flat.push_back(k(
                           [&]() -> decltype(auto) {
                             if constexpr (Is == E)
                               return e;
                             else
                               return std::get<Is>(dense);
                           }()...));
                     values.offsets.push_back(
                         static_cast<int64_t>(values.flat.size()));
                   }
                 });
    return Variable(odims, ounit, std::move(values));
  }
  if constexpr (kernel_propagates<Kernel>() &&
                (std::is_floating_point_v<
                     element_scalar_t<std::tuple_element_t<Is, Combo>>> &&
                 ...)) {
    EventStorage<R> variances;
    variances.offsets.reserve(odims.volume() + 1);
    variances.flat.reserve(ev.flat.size());
    strided_rows(
        odims, offs, cstrides,
        [&](const std::array<int64_t, N> &pos, int64_t n,
            const std::array<int64_t, N> &istr) {
          for (int64_t i = 0; i < n; ++i) {
            const int64_t li = pos[E] + i * istr[E];
            const auto list = ev.list(li);
            const std::span<const ET> varlist =
                evvar ? evvar->list(li) : std::span<const ET>{};
            const std::tuple dense{
                ValueAndVariance<element_scalar_t<std::tuple_element_t<Is, Combo>>>{
                    dense_at(std::integral_constant<size_t, Is>{},
                             pos[Is] + i * istr[Is]),
                    dense_var_at(std::integral_constant<size_t, Is>{},
                                 pos[Is] + i * istr[Is])}...};
            for (size_t j = 0; j < list.size(); ++j) {
              const auto r = k([&]() {
                if constexpr (Is == E)
                  return ValueAndVariance<ET>{list[j],
                                              evvar ? varlist[j] : ET{0}};
                else
                  return std::get<Is>(dense);
              }()...);
              values.flat.push_back(r.value);
              variances.flat.push_back(r.variance);
            }
            values.offsets.push_back(static_cast<int64_t>(values.flat.size()));
            variances.offsets.push_back(
                static_cast<int64_t>(variances.flat.size()));
          }
        });
    return Variable(odims, ounit, std::move(values), std::move(variances));
  } else {
    throw TypeError(std::string(name) +
                    ": variances require floating-point data");
  }
}

template <class Combo, class Kernel, size_t N>
Variable run_combo(std::string_view name, const Kernel &k,
                   const std::array<VariableConstView, N> &in) {
  constexpr int E = event_index<Combo>();
  static_assert(E != -2, "at most one event-list element per type combo");
  if constexpr (E < 0)
    return run_dense<Combo>(name, k, in, std::make_index_sequence<N>{});
  else
    return run_event<Combo, size_t(E)>(name, k, in,
                                       std::make_index_sequence<N>{});
}

// In-place core: the target is input 0 and receives every result element.
template <class Combo, class Kernel, size_t N, size_t... Is>
void run_in_place(std::string_view name, const Kernel &k,
                  const VariableView &target,
                  const std::array<VariableConstView, N> &in,
                  std::index_sequence<Is...>) {
  constexpr int E = event_index<Combo>();
  static_assert(E != -2, "at most one event-list element per type combo");
  if constexpr (E >= 1) {
    throw TypeError(std::string(name) +
                    ": in-place target must be the event-list operand");
  } else if constexpr (!std::is_same_v<
                           std::decay_t<decltype(k(
                               std::declval<element_scalar_t<
                                   std::tuple_element_t<Is, Combo>>>()...))>,
                           element_scalar_t<std::tuple_element_t<0, Combo>>>) {
    throw TypeError(std::string(name) +
                    ": in-place operand types do not produce the target's "
                    "element type");
  } else {
    using T0 = element_scalar_t<std::tuple_element_t<0, Combo>>;
    const std::array<Dims, N> dimses{in[Is].dims()...};
    if constexpr (E == 0) {
      (void)event_output_dims<0>(name, in);
    } else {
      const BroadcastPlan plan = plan_broadcast(dimses);
      if (plan.output != target.dims())
        throw ShapeError(std::string(name) + ": output dims " +
                         plan.output.to_string() +
                         " do not match in-place target dims " +
                         target.dims().to_string());
    }
    const Dims &odims = target.dims();
    const bool with_var = kernel_propagates<Kernel>() &&
                          (in[Is].has_variances() || ...);
    if (with_var && !target.has_variances())
      throw TypeError(std::string(name) +
                      ": in-place target lacks variances required by the "
                      "operation");
    if (!with_var && target.has_variances())
      throw TypeError(std::string(name) +
                      ": operation would drop the in-place target's "
                      "variances");
    const std::array<std::vector<int64_t>, N> cstrides{
        compose_strides(odims, in[Is])...};
    const std::array<int64_t, N> offs{in[Is].offset()...};
    if constexpr (E == 0) {
      EventStorage<T0> &tv = target.template event_values<T0>();
      EventStorage<T0> *tvar = target.has_variances()
                                   ? &target.template event_variances<T0>()
                                   : nullptr;
      auto dense_at = [&]<size_t I>(std::integral_constant<size_t, I>,
                                    int64_t p) -> element_scalar_t<
                          std::tuple_element_t<I, Combo>> {
        if constexpr (I == 0)
          return {};
        else
          return in[I]
              .template values_base<std::tuple_element_t<I, Combo>>()[p];
      };
      auto dense_var_at = [&]<size_t I>(std::integral_constant<size_t, I>,
                                        int64_t p) -> element_scalar_t<
                              std::tuple_element_t<I, Combo>> {
        if constexpr (I == 0)
          return {};
        else
          return in[I].has_variances()
                     ? in[I].template variances_base<
                           std::tuple_element_t<I, Combo>>()[p]
                     : std::tuple_element_t<I, Combo>{0};
      };
      strided_rows(
          odims, offs, cstrides,
          [&](const std::array<int64_t, N> &pos, int64_t n,
              const std::array<int64_t, N> &istr) {
            for (int64_t i = 0; i < n; ++i) {
              const int64_t li = pos[0] + i * istr[0];
              auto list = tv.list(li);
              if (!with_var) {
                const std::tuple dense{dense_at(
                    std::integral_constant<size_t, Is>{},
                    pos[Is] + i * istr[Is])...};
                for (T0 &e : list)
                  e = k([&]() -> decltype(auto) {
                    if constexpr (Is == 0)
                      return e;
                    else
                      return std::get<Is>(dense);
                  }()...);
              } else if constexpr (kernel_propagates<Kernel>() &&
                                   (std::is_floating_point_v<element_scalar_t<
                                        std::tuple_element_t<Is, Combo>>> &&
                                    ...)) {
                auto varlist = tvar->list(li);
                const std::tuple dense{ValueAndVariance<element_scalar_t<
                    std::tuple_element_t<Is, Combo>>>{
                    dense_at(std::integral_constant<size_t, Is>{},
                             pos[Is] + i * istr[Is]),
                    dense_var_at(std::integral_constant<size_t, Is>{},
                                 pos[Is] + i * istr[Is])}...};
                for (size_t j = 0; j < list.size(); ++j) {
                  const auto r = k([&]() {
                    if constexpr (Is == 0)
                      return ValueAndVariance<T0>{list[j], varlist[j]};
                    else
                      return std::get<Is>(dense);
                  }()...);
                  list[j] = r.value;
                  varlist[j] = r.variance;
                }
              }
            }
          });
    } else {
      T0 *tv = target.template values_base<T0>();
      const std::tuple bases{
          in[Is].template values_base<std::tuple_element_t<Is, Combo>>()...};
      if (!with_var) {
        strided_rows(odims, offs, cstrides,
                     [&](const std::array<int64_t, N> &pos, int64_t n,
                         const std::array<int64_t, N> &istr) {
                       if (((istr[Is] == 1) && ...)) {
                         for (int64_t i = 0; i < n; ++i)
                           tv[pos[0] + i] =
                               k(std::get<Is>(bases)[pos[Is] + i]...);
                       } else {
                         for (int64_t i = 0; i < n; ++i)
                           tv[pos[0] + i * istr[0]] = k(
                               std::get<Is>(bases)[pos[Is] + i * istr[Is]]...);
                       }
                     });
      } else if constexpr (kernel_propagates<Kernel>() &&
                           (std::is_floating_point_v<
                                std::tuple_element_t<Is, Combo>> &&
                            ...)) {
        T0 *te = target.template variances_base<T0>();
        const std::tuple vbases{
            (in[Is].has_variances()
                 ? in[Is]
                       .template variances_base<std::tuple_element_t<Is, Combo>>()
                 : nullptr)...};
        strided_rows(
            odims, offs, cstrides,
            [&](const std::array<int64_t, N> &pos, int64_t n,
                const std::array<int64_t, N> &istr) {
              for (int64_t i = 0; i < n; ++i) {
                const auto r =
                    k(ValueAndVariance<std::tuple_element_t<Is, Combo>>{
                        std::get<Is>(bases)[pos[Is] + i * istr[Is]],
                        std::get<Is>(vbases)
                            ? std::get<Is>(vbases)[pos[Is] + i * istr[Is]]
                            : std::tuple_element_t<Is, Combo>{0}}...);
                tv[pos[0] + i * istr[0]] = r.value;
                te[pos[0] + i * istr[0]] = r.variance;
              }
            });
      } else {
        throw TypeError(std::string(name) +
                        ": variances require floating-point data");
      }
    }
  }
}

template <class Kernel, class... Vs>
void transform_in_place_impl(std::string_view name, const Kernel &k,
                             const VariableView &target, bool allow_unit_change,
                             const Vs &...rest) {
  constexpr size_t N = 1 + sizeof...(Vs);
  const std::array<VariableConstView, N> in{VariableConstView(target),
                                            VariableConstView(rest)...};
  std::array<DType, N> actual{};
  for (size_t i = 0; i < N; ++i)
    actual[i] = in[i].dtype();
  const Unit ounit = [&]<size_t... Is>(std::index_sequence<Is...>) {
    return k(in[Is].unit()...);
  }(std::make_index_sequence<N>{});
  if (ounit != target.unit()) {
    if (!allow_unit_change)
      throw ViewError(std::string(name) + ": a view cannot change the unit (" +
                      to_string(target.unit()) + " -> " + to_string(ounit) +
                      ")");
  }
  const bool matched = dispatch_combo<typename Kernel::types>(
      actual, [&]<class Combo>() {
        run_in_place<Combo>(name, k, target, in,
                            std::make_index_sequence<N>{});
      });
  if (!matched)
    throw_combo_error(name, actual);
  if (allow_unit_change && ounit != target.unit())
    target.underlying().set_unit(ounit);
}

} // namespace detail

/// Applies the kernel element-wise over the broadcast of all inputs.
/// The kernel supplies a Unit overload, value overloads for every dtype
/// combo it lists in `types`, and (via ValueAndVariance) first-order
/// uncertainty propagation. The result carries variances iff any input does
/// and the kernel propagates them. At most one input may be an event list;
/// dense operands are then broadcast into each event list.
template <class Kernel, class... Vs>
Variable transform(std::string_view name, const Kernel &k, const Vs &...vs) {
  constexpr size_t N = sizeof...(Vs);
  static_assert(N >= 1, "transform needs at least one input");
  const std::array<VariableConstView, N> in{VariableConstView(vs)...};
  std::array<DType, N> actual{};
  for (size_t i = 0; i < N; ++i)
    actual[i] = in[i].dtype();
  std::optional<Variable> out;
  const bool matched = detail::dispatch_combo<typename Kernel::types>(
      actual, [&]<class Combo>() {
        out = detail::run_combo<Combo>(name, k, in);
      });
  if (!matched)
    detail::throw_combo_error(name, actual);
  return std::move(*out);
}

/// In-place transform writing into `target`, which also serves as the first
/// kernel operand. Output dims must equal target dims exactly. A Variable
/// target may change unit per the kernel's unit rule; a view target may not.
template <class Kernel, class... Vs>
void transform_in_place(std::string_view name, const Kernel &k,
                        Variable &target, const Vs &...rest) {
  detail::transform_in_place_impl(name, k, VariableView(target), true,
                                  rest...);
}

template <class Kernel, class... Vs>
void transform_in_place(std::string_view name, const Kernel &k,
                        VariableView target, const Vs &...rest) {
  detail::transform_in_place_impl(name, k, target, false, rest...);
}

} // namespace larr
