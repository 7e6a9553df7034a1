#pragma once

// Complex state vectors, projective rays and spin directions.
//
// A ray (point of CP^{n-1}) is stored as its rank-1 orthogonal projector
// z z^dagger. That makes U(1) phase invariance hold by construction and lets
// two rays be compared with a plain matrix norm, with no chart or gauge
// special-casing where a component vanishes.

#include <complex>
#include <Eigen/Dense>

namespace hopf {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Default tolerance for algebraic identities (norms, idempotence, ...).
inline constexpr double kDefaultTolerance = 1e-12;

/// Components with modulus at or below this are treated as zero when fixing
/// the gauge of a representative.
inline constexpr double kGaugeThreshold = 1e-10;

/// Unit vector of C^n, i.e. a point of S^{2n-1}.
class StateVector {
 public:
  /// Throws NormalizationError unless | ||z||^2 - 1 | <= tol.
  explicit StateVector(CVector components, double tol = kDefaultTolerance);

  /// Rescales a nonzero vector onto the sphere.
  static StateVector normalized(const CVector& raw);
  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return z_.size(); }
  const CVector& components() const { return z_; }
  Complex operator[](Eigen::Index i) const { return z_[i]; }

  /// e^{i rho} z; the fibre action of U(1).
  StateVector with_phase(double rho) const;

 private:
  struct Trusted {};
  StateVector(CVector components, Trusted) : z_(std::move(components)) {}
  friend StateVector trusted_state(CVector components);

  CVector z_;
};

/// Point of CP^{n-1}, stored as its projector.
class Ray {
 public:
  /// Throws ProjectorError unless P is Hermitian, idempotent and of trace 1.
  explicit Ray(CMatrix projector, double tol = kDefaultTolerance);

  Eigen::Index dim() const { return p_.rows(); }
  const CMatrix& projector() const { return p_; }

  /// Gauge-fixed unit representative: first component with modulus above
  /// kGaugeThreshold is real and positive.
  StateVector representative() const;

 private:
  struct Trusted {};
  Ray(CMatrix projector, Trusted) : p_(std::move(projector)) {}
  friend Ray ray_of(const StateVector& z);
  friend Ray trusted_ray(CMatrix projector);

  CMatrix p_;
};

/// Unit vector of R^3; a measurement axis or a point of the Bloch sphere.
class Direction {
 public:
  /// Throws NormalizationError unless | x^2 + y^2 + z^2 - 1 | <= tol.
  Direction(double x, double y, double z, double tol = kDefaultTolerance);

  /// Throws NormalizationError for the zero vector.
  static Direction normalized(double x, double y, double z);
  static Direction normalized(const Eigen::Vector3d& v) { return normalized(v.x(), v.y(), v.z()); }

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

  double dot(const Direction& other) const { return v_.dot(other.v_); }
  Direction operator-() const { return Direction(-v_, Trusted{}); }

 private:
  struct Trusted {};
  Direction(Eigen::Vector3d v, Trusted) : v_(std::move(v)) {}

  Eigen::Vector3d v_;
};

// Construction helpers that skip validation. Only for values that are unit
// (resp. rank-1 projectors) by construction.
StateVector trusted_state(CVector components);
Ray trusted_ray(CMatrix projector);

/// <a, b> = sum_i conj(a_i) b_i. Throws DimensionError on size mismatch.
Complex hermitian_inner(const CVector& a, const CVector& b);
Complex hermitian_inner(const StateVector& a, const StateVector& b);

/// Kronecker product with basis index (i, j) -> 2i + j, i.e. the order
/// (up up, up down, down up, down down) for two spins.
StateVector tensor_product(const StateVector& a, const StateVector& b);
CVector kron(const CVector& a, const CVector& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// The canonical quotient z -> z C*, realised as z z^dagger.
Ray ray_of(const StateVector& z);

/// Largest entrywise modulus of P - Q.
double projector_deviation(const Ray& p, const Ray& q);

/// arccos sqrt(tr PQ), in [0, pi/2]. Evaluated as atan2 of the chordal and
/// overlap parts so it stays accurate near both ends of the range.
double fubini_study_distance(const Ray& p, const Ray& q);

/// Phase-fixes v so that its first component with modulus above
/// kGaugeThreshold is real and non-negative. Does not normalise.
CVector gauge_fixed(const CVector& v);

/// Pauli matrices in the standard (sigma_z diagonal) convention.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
/// n . sigma
CMatrix n_dot_sigma(const Direction& n);

/// Unit eigenvector of n . sigma with eigenvalue sign (+1 or -1), gauge
/// fixed as in Ray::representative. Throws std::invalid_argument for any
/// other sign.
StateVector spinor_of(const Direction& n, int sign);

}  // namespace hopf
