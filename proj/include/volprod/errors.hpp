#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace volprod {

/// Base class of every error raised by the library.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input collapses below the area/length tolerance (hull, clip, sector).
class DegenerateInput : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SingularMap : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// The polarity centre is on or outside an edge line of the body.
class CentreNotInterior : public GeometryError {
 public:
  CentreNotInterior(std::size_t edge, const std::string& what)
      : GeometryError(what), edge_(edge) {}

  /// Index of the offending edge (edge k runs from vertex k to vertex k+1).
  std::size_t edge() const noexcept { return edge_; }

 private:
  std::size_t edge_;
};

class NoConvergence : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class InvalidParameter : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotSymmetric : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Supporting lines of a sector do not meet beyond the chord.
class BadConfiguration : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A stated hypothesis of a checker does not hold for the given input.
class HypothesisViolated : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

}  // namespace volprod
