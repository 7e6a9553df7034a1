#include "hopf/ray.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

std::string describe_norm(double norm2) {
  std::ostringstream os;
  os.precision(17);
  os << "squared norm " << norm2 << " is not 1";
  return os.str();
}

}  // namespace

StateVector::StateVector(CVector components, double tol) : z_(std::move(components)) {
  if (z_.size() == 0) throw DimensionError("StateVector: empty vector");
  const double n2 = z_.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= tol)) throw NormalizationError("StateVector: " + describe_norm(n2));
}

StateVector StateVector::normalized(const CVector& raw) {
  if (raw.size() == 0) throw DimensionError("StateVector::normalized: empty vector");
  const double n = raw.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NormalizationError("StateVector::normalized: zero or non-finite vector");
  return StateVector(raw / n, Trusted{});
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (dim < 1 || index < 0 || index >= dim) throw DimensionError("StateVector::basis: index out of range");
  CVector e = CVector::Zero(dim);
  e[index] = 1.0;
  return StateVector(std::move(e), Trusted{});
}

StateVector StateVector::with_phase(double rho) const {
  return StateVector(z_ * std::polar(1.0, rho), Trusted{});
}

StateVector trusted_state(CVector components) { return StateVector(std::move(components), StateVector::Trusted{}); }

Ray::Ray(CMatrix projector, double tol) : p_(std::move(projector)) {
  if (p_.rows() == 0 || p_.rows() != p_.cols()) throw DimensionError("Ray: projector must be a non-empty square matrix");
  const double herm = (p_ - p_.adjoint()).cwiseAbs().maxCoeff();
  const double idem = (p_ * p_ - p_).cwiseAbs().maxCoeff();
  const double tr = std::abs(p_.trace() - Complex(1.0));
  if (!(herm <= tol)) throw ProjectorError("Ray: matrix is not Hermitian");
  if (!(idem <= tol)) throw ProjectorError("Ray: matrix is not idempotent");
  if (!(tr <= tol)) throw ProjectorError("Ray: trace is not 1");
}

StateVector Ray::representative() const {
  Eigen::Index k = 0;
  p_.diagonal().real().maxCoeff(&k);
  CVector v = p_.col(k) / std::sqrt(p_(k, k).real());
  v.normalize();
  return trusted_state(gauge_fixed(v));
}

Ray trusted_ray(CMatrix projector) { return Ray(std::move(projector), Ray::Trusted{}); }

Direction::Direction(double x, double y, double z, double tol) : v_(x, y, z) {
  const double n2 = v_.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= tol)) throw NormalizationError("Direction: " + describe_norm(n2));
}

Direction Direction::normalized(double x, double y, double z) {
  Eigen::Vector3d v(x, y, z);
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NormalizationError("Direction::normalized: zero or non-finite vector");
  return Direction(v / n, Trusted{});
}

Complex hermitian_inner(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("hermitian_inner: dimension mismatch");
  return a.dot(b);  // Eigen's dot conjugates the first argument
}

Complex hermitian_inner(const StateVector& a, const StateVector& b) {
  return hermitian_inner(a.components(), b.components());
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return trusted_state(kron(a.components(), b.components()));
}

Ray ray_of(const StateVector& z) {
  const CVector& v = z.components();
  return Ray(v * v.adjoint(), Ray::Trusted{});
}

double projector_deviation(const Ray& p, const Ray& q) {
  if (p.dim() != q.dim()) throw DimensionError("projector_deviation: dimension mismatch");
  return (p.projector() - q.projector()).cwiseAbs().maxCoeff();
}

double fubini_study_distance(const Ray& p, const Ray& q) {
  if (p.dim() != q.dim()) throw DimensionError("fubini_study_distance: dimension mismatch");
  // tr(PQ) = sum_ij P_ij Q_ji, real for Hermitian P, Q.
  const double overlap = std::clamp((p.projector().cwiseProduct(q.projector().transpose())).sum().real(), 0.0, 1.0);
  // ||P - Q||_F^2 = 2 - 2 tr(PQ) = 2 sin^2 d for rank-1 projectors.
  const double chord = std::clamp((p.projector() - q.projector()).norm() / std::sqrt(2.0), 0.0, 1.0);
  return std::atan2(chord, std::sqrt(overlap));
}

CVector gauge_fixed(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > kGaugeThreshold) {
      CVector out = v * (std::conj(v[i]) / m);
      out[i] = m;
      return out;
    }
  }
  return v;
}

CMatrix pauli_x() {
  CMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

CMatrix pauli_y() {
  CMatrix s(2, 2);
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

CMatrix pauli_z() {
  CMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

CMatrix n_dot_sigma(const Direction& n) {
  CMatrix s(2, 2);
  s << n.z(), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), -n.z();
  return s;
}

StateVector spinor_of(const Direction& n, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("spinor_of: sign must be +1 or -1");
  // Eigenprojector (1 + sign n.sigma)/2; its dominant column spans the eigenline.
  const CMatrix p = 0.5 * (CMatrix::Identity(2, 2) + double(sign) * n_dot_sigma(n));
  return trusted_ray(p).representative();
}

}  // namespace hopf
