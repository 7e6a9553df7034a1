#pragma once

// The associated line bundle S^{2l-1} x_{U(1)} C and the tautological bundle
// E(gamma) = {(line, vector on the line)} over CP^{l-1}, with the canonical
// isomorphism psi([(z, w)]) = (z C*, w z) between them.

#include "hopf/ray.hpp"

namespace hopf {

/// A class [(z, w)] = {(z e^{i rho}, e^{-i rho} w)}, held through one
/// representative. Two points are the same class iff psi agrees on them; use
/// equivalent(), not the representative fields, to compare.
struct AssociatedPoint {
  StateVector rep_z;
  Complex rep_w;
};

/// A line through the origin of C^l together with a vector on it. The zero
/// vector is allowed, so the zero section is representable.
class TautologicalPoint {
 public:
  /// Throws ContainmentError if || P v - v || > tol * max(1, ||v||).
  TautologicalPoint(Ray base, CVector vector, double tol = kDefaultTolerance);

  /// Accepts any nonzero spanning vector z of the line; it is normalised here.
  static TautologicalPoint from_line(const CVector& z, CVector vector, double tol = kDefaultTolerance);

  const Ray& base() const { return base_; }
  const CVector& vector() const { return v_; }
  Eigen::Index dim() const { return base_.dim(); }

 private:
  Ray base_;
  CVector v_;
};

/// psi([(z, w)]) = (z C*, w z).
TautologicalPoint psi(const AssociatedPoint& a);

/// psi^{-1}((z C*, v)) = [(z0, lambda)] with z0 the gauge-fixed
/// representative of the line and lambda z0 = v.
AssociatedPoint psi_inverse(const TautologicalPoint& t);

/// pi((z C*, v)) = z C*.
const Ray& bundle_projection(const TautologicalPoint& t);

/// Class equality, decided by comparing psi of both sides.
bool equivalent(const AssociatedPoint& a, const AssociatedPoint& b, double tol = kDefaultTolerance);

/// Largest of the base projector deviation and the fibre vector deviation.
double deviation(const TautologicalPoint& a, const TautologicalPoint& b);

/// E(gamma over CP^{l-1}) -> E(gamma over CP^{m-1}), m = target_dim, by
/// zero-padding both the line and the vector.
TautologicalPoint include_tautological(const TautologicalPoint& t, Eigen::Index target_dim = 4);

}  // namespace hopf
