#include "hopf/line_bundle.hpp"

#include <algorithm>

#include "hopf/errors.hpp"
#include "hopf/fibration.hpp"

namespace hopf {

TautologicalPoint::TautologicalPoint(Ray base, CVector vector, double tol)
    : base_(std::move(base)), v_(std::move(vector)) {
  if (v_.size() != base_.dim()) throw DimensionError("TautologicalPoint: vector and line differ in dimension");
  const double off_line = (base_.projector() * v_ - v_).norm();
  if (!(off_line <= tol * std::max(1.0, v_.norm())))
    throw ContainmentError("TautologicalPoint: vector does not lie on the base line");
}

TautologicalPoint TautologicalPoint::from_line(const CVector& z, CVector vector, double tol) {
  return TautologicalPoint(ray_of(StateVector::normalized(z)), std::move(vector), tol);
}

TautologicalPoint psi(const AssociatedPoint& a) {
  return TautologicalPoint(ray_of(a.rep_z), a.rep_w * a.rep_z.components());
}

AssociatedPoint psi_inverse(const TautologicalPoint& t) {
  const StateVector z0 = t.base().representative();
  // v = lambda z0 with ||z0|| = 1 gives lambda = <z0, v>.
  return AssociatedPoint{z0, hermitian_inner(z0.components(), t.vector())};
}

const Ray& bundle_projection(const TautologicalPoint& t) { return t.base(); }

double deviation(const TautologicalPoint& a, const TautologicalPoint& b) {
  if (a.dim() != b.dim()) throw DimensionError("deviation: dimension mismatch");
  const double base = projector_deviation(a.base(), b.base());
  const double vec = a.dim() == 0 ? 0.0 : (a.vector() - b.vector()).cwiseAbs().maxCoeff();
  return std::max(base, vec);
}

bool equivalent(const AssociatedPoint& a, const AssociatedPoint& b, double tol) {
  if (a.rep_z.dim() != b.rep_z.dim()) return false;
  return deviation(psi(a), psi(b)) <= tol;
}

TautologicalPoint include_tautological(const TautologicalPoint& t, Eigen::Index target_dim) {
  if (target_dim < t.dim()) throw DimensionError("include_tautological: target dimension smaller than source");
  CVector v = CVector::Zero(target_dim);
  v.head(t.dim()) = t.vector();
  return TautologicalPoint(include_ray(t.base(), target_dim), std::move(v));
}

}  // namespace hopf
