// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/transform.hpp"

namespace larr {

BroadcastPlan plan_broadcast(std::span<const Dims> inputs) {
  Dims output;
  for (const Dims &dims : inputs) {
    for (int d = 0; d < dims.rank(); ++d) {
      const std::string &label = dims.label(d);
      if (auto i = output.index_of(label)) {
        if (output.extent(*i) != dims.extent(d))
          throw ShapeError("dimension '" + label + "' has extent " +
                           std::to_string(dims.extent(d)) +
                           " but was already seen with extent " +
                           std::to_string(output.extent(*i)));
      } else {
        output.push_back(label, dims.extent(d));
      }
    }
  }
  BroadcastPlan plan;
  plan.strides.reserve(inputs.size());
  for (const Dims &dims : inputs) {
    const auto rm = row_major_strides(dims);
    std::vector<int64_t> s(output.rank(), 0);
    for (int d = 0; d < output.rank(); ++d)
      if (auto i = dims.index_of(output.label(d)))
        s[d] = rm[static_cast<size_t>(*i)];
    plan.strides.push_back(std::move(s));
  }
  plan.output = std::move(output);
  return plan;
}

namespace detail {

std::vector<int64_t> compose_strides(const Dims &odims,
                                     const VariableConstView &v) {
  std::vector<int64_t> out(odims.rank(), 0);
  for (int d = 0; d < odims.rank(); ++d)
    if (auto i = v.dims().index_of(odims.label(d)))
      out[d] = v.strides()[static_cast<size_t>(*i)];
  return out;
}

} // namespace detail

} // namespace larr
