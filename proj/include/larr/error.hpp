// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 larr contributors
#pragma once

#include <stdexcept>
#include <string>

namespace larr {

/// Base class of all errors thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Incompatible or mismatching physical units.
class UnitError : public Error {
public:
  using Error::Error;
};

/// Unit exponent left the representable small-integer range.
class UnitOverflowError : public UnitError {
public:
  using UnitError::UnitError;
};

/// Array shapes or element counts do not match.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Unsupported element type or element type combination.
class TypeError : public Error {
public:
  using Error::Error;
};

/// Unknown dimension label, duplicate label, or bad dimension order.
class DimsError : public Error {
public:
  using Error::Error;
};

/// Index or range outside a dimension's extent.
class BoundsError : public Error {
public:
  using Error::Error;
};

/// Operation would alter unit, shape, or labels through a view.
class ViewError : public Error {
public:
  using Error::Error;
};

/// Coordinates of two operands do not match, or a coordinate is missing.
class CoordError : public Error {
public:
  using Error::Error;
};

/// Lookup of a named item failed.
class KeyError : public Error {
public:
  using Error::Error;
};

/// Dimension extents across a dataset disagree.
class AlignmentError : public Error {
public:
  using Error::Error;
};

/// Bin edges are not strictly increasing or otherwise unusable.
class EdgesError : public Error {
public:
  using Error::Error;
};

/// Arithmetic fault, e.g. integer division by zero.
class ArithmeticError : public Error {
public:
  using Error::Error;
};

/// Requested operation is not defined for this input.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// Malformed textual input (unit grammar, file contents).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A loaded document violates a container invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable directory).
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace larr
