#pragma once

#include <stdexcept>

namespace hopf {

/// Operands of mismatched or unsupported dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vector that should lie on the unit sphere does not.
class NormalizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that should be a rank-1 orthogonal projector is not.
class ProjectorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tangent data with Re<z, X> != 0.
class TangencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A fibre vector that does not lie on its base line.
class ContainmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Path or sphere mesh too coarse for an unambiguous phase.
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loop whose endpoints differ, or a start point not over the path start.
class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Measurement record whose fields contradict each other.
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hopf
