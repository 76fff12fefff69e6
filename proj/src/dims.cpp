// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/dims.hpp"

#include <algorithm>

#include "larr/error.hpp"

namespace larr {

Dims::Dims(std::initializer_list<std::pair<std::string, int64_t>> dims) {
  for (const auto &[label, extent] : dims)
    push_back(label, extent);
}

void Dims::push_back(std::string label, int64_t extent) {
  if (rank() == kMaxRank)
    throw DimsError("rank limit of " + std::to_string(kMaxRank) + " exceeded");
  if (label.empty())
    throw DimsError("empty dimension label");
  if (contains(label))
    throw DimsError("duplicate dimension label '" + label + "'");
  if (extent < 0)
    throw DimsError("negative extent for dimension '" + label + "'");
  labels_.push_back(std::move(label));
  extents_.push_back(extent);
}

int64_t Dims::volume() const {
  int64_t v = 1;
  for (int64_t e : extents_)
    v *= e;
  return v;
}

int64_t Dims::extent(std::string_view label) const {
  if (auto i = index_of(label))
    return extents_[static_cast<size_t>(*i)];
  throw DimsError("dimension '" + std::string(label) + "' not found in " + to_string());
}

std::optional<int> Dims::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int Dims::require(std::string_view label) const {
  if (auto i = index_of(label))
    return *i;
  throw DimsError("dimension '" + std::string(label) + "' not found in " + to_string());
}

Dims Dims::erased(int i) const {
  Dims out;
  for (int d = 0; d < rank(); ++d)
    if (d != i)
      out.push_back(labels_[static_cast<size_t>(d)], extents_[static_cast<size_t>(d)]);
  return out;
}

std::string Dims::to_string() const {
  std::string out = "(";
  for (int i = 0; i < rank(); ++i) {
    if (i > 0)
      out += ", ";
    out += label(i) + ": " + std::to_string(extent(i));
  }
  return out + ")";
}

std::vector<int64_t> row_major_strides(const Dims &dims) {
  std::vector<int64_t> strides(static_cast<size_t>(dims.rank()), 0);
  int64_t stride = 1;
  for (int i = dims.rank() - 1; i >= 0; --i) {
    strides[static_cast<size_t>(i)] = stride;
    stride *= dims.extent(i);
  }
  return strides;
}

} // namespace larr
