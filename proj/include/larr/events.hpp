// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "larr/data_array.hpp"

namespace larr {

/// Builds an event-list Variable from one list per dense element.
template <class T>
Variable make_event_variable(
    Dims dims, Unit unit, const std::vector<std::vector<T>> &lists,
    const std::optional<std::vector<std::vector<T>>> &variances =
        std::nullopt) {
  std::optional<Storage> var_storage;
  if (variances)
    var_storage = EventStorage<T>::from_lists(*variances);
  return Variable(std::move(dims), unit, EventStorage<T>::from_lists(lists),
                  std::move(var_storage));
}

enum class BinaryOp { Add, Subtract, Multiply, Divide };

/// Bins the event coord named by the edges' dim into dense counts. Events
/// follow the half-open rule (edges[k] <= e < edges[k+1]); out-of-range
/// events are discarded. Weight variances are summed when present, else the
/// bin variance is the summed weight (Poisson, = count for unit weights).
DataArray histogram(const DataArrayConstView &da,
                    const VariableConstView &edges);

/// Removes a dense dim by concatenating event lists across it in ascending
/// index order, for the data and every event coord.
DataArray flatten(const DataArrayConstView &da, const std::string &dim);

/// Appends b's events to a's, per dense element, for data and all event
/// coords. Dense shapes, units, coords, and event-coord names must agree.
DataArray event_concatenate(const DataArrayConstView &a,
                            const DataArrayConstView &b);

/// Applies `op` between one event-list Variable of `da` (the data when
/// target == "data", else the event coord of that name) and a dense operand,
/// broadcasting the dense values into the event lists.
DataArray event_dense_op(const DataArrayConstView &da,
                         const VariableConstView &dense, BinaryOp op,
                         const std::string &target);

} // namespace larr
