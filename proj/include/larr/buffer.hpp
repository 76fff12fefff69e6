// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace larr {

/// Fixed-size dense value storage. A thin owning array that, unlike
/// std::vector, stores bool as plain bool elements.
template <class T> class Buffer {
public:
  Buffer() = default;
  explicit Buffer(int64_t size) : data_(new T[static_cast<size_t>(size)]{}), size_(size) {}

  Buffer(std::initializer_list<T> init) : Buffer(static_cast<int64_t>(init.size())) {
    std::copy(init.begin(), init.end(), data_.get());
  }
  explicit Buffer(const std::vector<T> &v) : Buffer(static_cast<int64_t>(v.size())) {
    std::copy(v.begin(), v.end(), data_.get());
  }

  Buffer(const Buffer &other) : Buffer(other.size_) {
    std::copy(other.begin(), other.end(), data_.get());
  }
  Buffer &operator=(const Buffer &other) {
    if (this != &other) {
      Buffer tmp(other);
      *this = std::move(tmp);
    }
    return *this;
  }
  Buffer(Buffer &&) noexcept = default;
  Buffer &operator=(Buffer &&) noexcept = default;

  int64_t size() const { return size_; }
  T *data() { return data_.get(); }
  const T *data() const { return data_.get(); }
  T &operator[](int64_t i) { return data_[i]; }
  const T &operator[](int64_t i) const { return data_[i]; }
  T *begin() { return data_.get(); }
  T *end() { return data_.get() + size_; }
  const T *begin() const { return data_.get(); }
  const T *end() const { return data_.get() + size_; }
  std::span<T> span() { return {data_.get(), static_cast<size_t>(size_)}; }
  std::span<const T> span() const { return {data_.get(), static_cast<size_t>(size_)}; }

  bool operator==(const Buffer &other) const {
    return size_ == other.size_ && std::equal(begin(), end(), other.begin());
  }

private:
  std::unique_ptr<T[]> data_;
  int64_t size_ = 0;
};

} // namespace larr
