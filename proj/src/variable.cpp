// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#include "larr/variable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace larr {

namespace {

template <class T> struct storage_tag;
template <class T> struct storage_tag<Buffer<T>> {
  static constexpr DType value = dtype_of<T>;
};
template <> struct storage_tag<EventStorage<double>> {
  static constexpr DType value = DType::EventListFloat64;
};
template <> struct storage_tag<EventStorage<float>> {
  static constexpr DType value = DType::EventListFloat32;
};
template <> struct storage_tag<EventStorage<int64_t>> {
  static constexpr DType value = DType::EventListInt64;
};
template <> struct storage_tag<EventStorage<int32_t>> {
  static constexpr DType value = DType::EventListInt32;
};

int64_t element_count(const Storage &s) {
  return std::visit(
      [](const auto &data) -> int64_t {
        using S = std::decay_t<decltype(data)>;
        if constexpr (storage_tag<S>::value >= DType::EventListFloat64)
          return data.list_count();
        else
          return data.size();
      },
      s);
}

const std::vector<int64_t> *event_offsets(const Storage &s) {
  return std::visit(
      [](const auto &data) -> const std::vector<int64_t> * {
        using S = std::decay_t<decltype(data)>;
        if constexpr (storage_tag<S>::value >= DType::EventListFloat64)
          return &data.offsets;
        else
          return nullptr;
      },
      s);
}

// Calls f(underlying_element_index) for every logical element in row-major
// order of dims.
template <class F>
void for_each_underlying(const Dims &dims, int64_t offset,
                         std::span<const int64_t> strides, F &&f) {
  const int64_t n = dims.volume();
  if (n == 0)
    return;
  const int rank = dims.rank();
  std::vector<int64_t> idx(rank, 0);
  int64_t pos = offset;
  for (int64_t count = 0;;) {
    f(pos);
    if (++count == n)
      break;
    for (int d = rank - 1; d >= 0; --d) {
      pos += strides[d];
      if (++idx[d] < dims.extent(d))
        break;
      pos -= strides[d] * dims.extent(d);
      idx[d] = 0;
    }
  }
}

template <class T>
Buffer<T> gather_dense(const VariableConstView &v, const T *base) {
  Buffer<T> out(v.volume());
  T *o = out.data();
  int64_t i = 0;
  for_each_underlying(v.dims(), v.offset(), v.strides(),
                      [&](int64_t pos) { o[i++] = base[pos]; });
  return out;
}

template <class T>
EventStorage<T> gather_events(const VariableConstView &v,
                              const EventStorage<T> &src) {
  EventStorage<T> out;
  out.flat.reserve(src.flat.size());
  for_each_underlying(v.dims(), v.offset(), v.strides(),
                      [&](int64_t pos) { out.append_list(src.list(pos)); });
  return out;
}

} // namespace

DType storage_dtype(const Storage &s) {
  return std::visit(
      [](const auto &data) {
        return storage_tag<std::decay_t<decltype(data)>>::value;
      },
      s);
}

Variable::Variable(Dims dims, Unit unit, Storage values,
                   std::optional<Storage> variances)
    : dims_(std::move(dims)), unit_(std::move(unit)),
      dtype_(storage_dtype(values)), values_(std::move(values)),
      variances_(std::move(variances)) {
  if (element_count(values_) != dims_.volume())
    throw ShapeError("values hold " + std::to_string(element_count(values_)) +
                     " elements but dims " + dims_.to_string() + " require " +
                     std::to_string(dims_.volume()));
  if ((dtype_ == DType::Bool || dtype_ == DType::String) &&
      unit_ != Unit::dimensionless())
    throw UnitError("dtype " + std::string(to_string(dtype_)) +
                    " only supports the dimensionless unit");
  if (variances_) {
    if (!supports_variances(dtype_))
      throw TypeError("variances are not supported for dtype " +
                      std::string(to_string(dtype_)));
    if (storage_dtype(*variances_) != dtype_)
      throw TypeError("variance dtype " +
                      std::string(to_string(storage_dtype(*variances_))) +
                      " does not match value dtype " +
                      std::string(to_string(dtype_)));
    if (const auto *voffs = event_offsets(*variances_)) {
      if (*voffs != *event_offsets(values_))
        throw ShapeError("variance list structure does not match values");
    } else if (element_count(*variances_) != dims_.volume()) {
      throw ShapeError("variances hold " +
                       std::to_string(element_count(*variances_)) +
                       " elements but dims require " +
                       std::to_string(dims_.volume()));
    }
  }
}

void Variable::set_unit(const Unit &unit) {
  if ((dtype_ == DType::Bool || dtype_ == DType::String) &&
      unit != Unit::dimensionless())
    throw UnitError("dtype " + std::string(to_string(dtype_)) +
                    " only supports the dimensionless unit");
  unit_ = unit;
}

VariableConstView::VariableConstView(const Variable &var)
    : var_(&var), dims_(var.dims()), offset_(0),
      strides_(row_major_strides(var.dims())) {}

VariableView::VariableView(Variable &var)
    : VariableConstView(var), mut_(&var) {}

int64_t
VariableConstView::underlying_index(std::span<const int64_t> indices) const {
  if (static_cast<int>(indices.size()) != dims_.rank())
    throw DimsError("expected " + std::to_string(dims_.rank()) +
                    " indices, got " + std::to_string(indices.size()));
  int64_t pos = offset_;
  for (int d = 0; d < dims_.rank(); ++d) {
    if (indices[d] < 0 || indices[d] >= dims_.extent(d))
      throw BoundsError("index " + std::to_string(indices[d]) +
                        " out of range for dim '" + dims_.label(d) +
                        "' of extent " + std::to_string(dims_.extent(d)));
    pos += indices[d] * strides_[d];
  }
  return pos;
}

VariableConstView::Spec
VariableConstView::point_spec(const std::string &dim, int64_t index) const {
  const int d = dims_.require(dim);
  if (index < 0 || index >= dims_.extent(d))
    throw BoundsError("index " + std::to_string(index) +
                      " out of range for dim '" + dim + "' of extent " +
                      std::to_string(dims_.extent(d)));
  Spec spec{dims_.erased(d), offset_ + index * strides_[d], strides_};
  spec.strides.erase(spec.strides.begin() + d);
  return spec;
}

VariableConstView::Spec
VariableConstView::range_spec(const std::string &dim, int64_t begin,
                              int64_t end) const {
  const int d = dims_.require(dim);
  if (begin < 0 || begin > end || end > dims_.extent(d))
    throw BoundsError("range [" + std::to_string(begin) + ", " +
                      std::to_string(end) + ") invalid for dim '" + dim +
                      "' of extent " + std::to_string(dims_.extent(d)));
  Dims dims;
  for (int i = 0; i < dims_.rank(); ++i)
    dims.push_back(dims_.label(i), i == d ? end - begin : dims_.extent(i));
  return Spec{std::move(dims), offset_ + begin * strides_[d], strides_};
}

VariableConstView::Spec VariableConstView::transpose_spec(
    const std::vector<std::string> &order) const {
  if (static_cast<int>(order.size()) != dims_.rank())
    throw DimsError("transpose order has " + std::to_string(order.size()) +
                    " labels but view has rank " +
                    std::to_string(dims_.rank()));
  Dims dims;
  std::vector<int64_t> strides;
  for (const auto &label : order) {
    const int d = dims_.require(label);
    dims.push_back(label, dims_.extent(d));
    strides.push_back(strides_[d]);
  }
  return Spec{std::move(dims), offset_, std::move(strides)};
}

VariableConstView VariableConstView::slice_point(const std::string &dim,
                                                 int64_t index) const {
  auto spec = point_spec(dim, index);
  return {*var_, std::move(spec.dims), spec.offset, std::move(spec.strides)};
}

VariableConstView VariableConstView::slice_range(const std::string &dim,
                                                 int64_t begin,
                                                 int64_t end) const {
  auto spec = range_spec(dim, begin, end);
  return {*var_, std::move(spec.dims), spec.offset, std::move(spec.strides)};
}

VariableConstView VariableConstView::transpose_to(
    const std::vector<std::string> &order) const {
  auto spec = transpose_spec(order);
  return {*var_, std::move(spec.dims), spec.offset, std::move(spec.strides)};
}

VariableView VariableView::slice_point(const std::string &dim,
                                       int64_t index) const {
  auto spec = point_spec(dim, index);
  return {*mut_, std::move(spec.dims), spec.offset, std::move(spec.strides)};
}

VariableView VariableView::slice_range(const std::string &dim, int64_t begin,
                                       int64_t end) const {
  auto spec = range_spec(dim, begin, end);
  return {*mut_, std::move(spec.dims), spec.offset, std::move(spec.strides)};
}

VariableView
VariableView::transpose_to(const std::vector<std::string> &order) const {
  auto spec = transpose_spec(order);
  return {*mut_, std::move(spec.dims), spec.offset, std::move(spec.strides)};
}

VariableConstView Variable::slice_point(const std::string &dim,
                                        int64_t index) const {
  return const_view().slice_point(dim, index);
}
VariableView Variable::slice_point(const std::string &dim, int64_t index) {
  return view().slice_point(dim, index);
}
VariableConstView Variable::slice_range(const std::string &dim, int64_t begin,
                                        int64_t end) const {
  return const_view().slice_range(dim, begin, end);
}
VariableView Variable::slice_range(const std::string &dim, int64_t begin,
                                   int64_t end) {
  return view().slice_range(dim, begin, end);
}
VariableConstView
Variable::transpose_to(const std::vector<std::string> &order) const {
  return const_view().transpose_to(order);
}
VariableView Variable::transpose_to(const std::vector<std::string> &order) {
  return view().transpose_to(order);
}

Variable::operator VariableConstView() const { return VariableConstView(*this); }
Variable::operator VariableView() { return VariableView(*this); }
VariableConstView Variable::const_view() const {
  return VariableConstView(*this);
}
VariableView Variable::view() { return VariableView(*this); }

Variable copy(const VariableConstView &v) {
  const DType d = v.dtype();
  Storage values = [&]() -> Storage {
    if (is_event(d))
      return visit_event_dtype(d, [&](auto tag) -> Storage {
        using T = typename decltype(tag)::type;
        return gather_events<T>(v, v.event_values<T>());
      });
    return visit_dense_dtype(d, [&](auto tag) -> Storage {
      using T = typename decltype(tag)::type;
      return gather_dense<T>(v, v.values_base<T>());
    });
  }();
  std::optional<Storage> variances;
  if (v.has_variances()) {
    if (is_event(d))
      variances = visit_event_dtype(d, [&](auto tag) -> Storage {
        using T = typename decltype(tag)::type;
        return gather_events<T>(v, v.event_variances<T>());
      });
    else
      variances = visit_dense_dtype(d, [&](auto tag) -> Storage {
        using T = typename decltype(tag)::type;
        return gather_dense<T>(v, v.variances_base<T>());
      });
  }
  return Variable(v.dims(), v.unit(), std::move(values), std::move(variances));
}

namespace {

template <class T> void scale_span(std::span<T> data, T factor) {
  for (T &x : data)
    x *= factor;
}

} // namespace

Variable to_unit(const VariableConstView &v, const Unit &target) {
  if (!v.unit().compatible(target))
    throw UnitError("cannot convert " + to_string(v.unit()) + " to " +
                    to_string(target));
  const DType d = v.dtype();
  if (d != DType::Float64 && d != DType::Float32 &&
      d != DType::EventListFloat64 && d != DType::EventListFloat32)
    throw TypeError("to_unit requires floating-point data, got dtype " +
                    std::string(to_string(d)));
  Variable out = copy(v);
  const double factor = v.unit().scale() / target.scale();
  auto apply = [&](auto tag, double f) {
    using T = typename decltype(tag)::type;
    if (is_event(d)) {
      scale_span<T>(out.event_values<T>().flat, static_cast<T>(f));
      if (out.has_variances())
        scale_span<T>(out.event_variances<T>().flat, static_cast<T>(f * f));
    } else {
      scale_span<T>(out.values<T>(), static_cast<T>(f));
      if (out.has_variances())
        scale_span<T>(out.variances<T>(), static_cast<T>(f * f));
    }
  };
  if (d == DType::Float64 || d == DType::EventListFloat64)
    apply(std::type_identity<double>{}, factor);
  else
    apply(std::type_identity<float>{}, factor);
  out.set_unit(target);
  return out;
}

template <class T> bool bitwise_equal(const T &a, const T &b) {
  if constexpr (std::is_same_v<T, double>)
    return std::bit_cast<uint64_t>(a) == std::bit_cast<uint64_t>(b);
  else if constexpr (std::is_same_v<T, float>)
    return std::bit_cast<uint32_t>(a) == std::bit_cast<uint32_t>(b);
  else
    return a == b;
}

template bool bitwise_equal<double>(const double &, const double &);
template bool bitwise_equal<float>(const float &, const float &);
template bool bitwise_equal<int64_t>(const int64_t &, const int64_t &);
template bool bitwise_equal<int32_t>(const int32_t &, const int32_t &);
template bool bitwise_equal<bool>(const bool &, const bool &);
template bool bitwise_equal<std::string>(const std::string &,
                                         const std::string &);

namespace {

template <class T>
bool spans_bitwise_equal(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!bitwise_equal(a[i], b[i]))
      return false;
  return true;
}

// Element-wise comparison of two same-shaped views through their strides.
template <class T>
bool dense_views_equal(const VariableConstView &a, const VariableConstView &b,
                       bool variances) {
  const T *pa = variances ? a.variances_base<T>() : a.values_base<T>();
  const T *pb = variances ? b.variances_base<T>() : b.values_base<T>();
  std::vector<int64_t> ia, ib;
  ia.reserve(a.volume());
  ib.reserve(b.volume());
  for_each_underlying(a.dims(), a.offset(), a.strides(),
                      [&](int64_t pos) { ia.push_back(pos); });
  for_each_underlying(b.dims(), b.offset(), b.strides(),
                      [&](int64_t pos) { ib.push_back(pos); });
  for (size_t i = 0; i < ia.size(); ++i)
    if (!bitwise_equal(pa[ia[i]], pb[ib[i]]))
      return false;
  return true;
}

template <class T>
bool event_views_equal(const VariableConstView &a, const VariableConstView &b,
                       bool variances) {
  const EventStorage<T> &sa =
      variances ? a.event_variances<T>() : a.event_values<T>();
  const EventStorage<T> &sb =
      variances ? b.event_variances<T>() : b.event_values<T>();
  std::vector<int64_t> ia, ib;
  for_each_underlying(a.dims(), a.offset(), a.strides(),
                      [&](int64_t pos) { ia.push_back(pos); });
  for_each_underlying(b.dims(), b.offset(), b.strides(),
                      [&](int64_t pos) { ib.push_back(pos); });
  for (size_t i = 0; i < ia.size(); ++i)
    if (!spans_bitwise_equal<T>(sa.list(ia[i]), sb.list(ib[i])))
      return false;
  return true;
}

} // namespace

bool equals(const VariableConstView &a, const VariableConstView &b) {
  if (a.dims() != b.dims() || a.unit() != b.unit() || a.dtype() != b.dtype() ||
      a.has_variances() != b.has_variances())
    return false;
  const DType d = a.dtype();
  const bool values_equal =
      is_event(d) ? visit_event_dtype(d,
                                      [&](auto tag) {
                                        using T = typename decltype(tag)::type;
                                        return event_views_equal<T>(a, b, false);
                                      })
                  : visit_dense_dtype(d, [&](auto tag) {
                      using T = typename decltype(tag)::type;
                      return dense_views_equal<T>(a, b, false);
                    });
  if (!values_equal)
    return false;
  if (!a.has_variances())
    return true;
  return is_event(d) ? visit_event_dtype(d,
                                         [&](auto tag) {
                                           using T = typename decltype(tag)::type;
                                           return event_views_equal<T>(a, b,
                                                                       true);
                                         })
                     : visit_dense_dtype(d, [&](auto tag) {
                         using T = typename decltype(tag)::type;
                         return dense_views_equal<T>(a, b, true);
                       });
}

bool Variable::operator==(const Variable &other) const {
  return equals(const_view(), other.const_view());
}

const std::vector<int64_t> &event_offsets(const Variable &v) {
  const auto *offs = event_offsets(v.values_storage());
  if (!offs)
    throw TypeError("variable holds dense data, not event lists");
  return *offs;
}

} // namespace larr
