#include "hopf/connection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hopf/errors.hpp"
#include "hopf/fibration.hpp"

namespace hopf {

namespace {

constexpr double kPi = std::numbers::pi;

// v . sigma for an arbitrary real 3-vector.
CMatrix sigma_dot(const Eigen::Vector3d& v) {
  CMatrix s(2, 2);
  s << v.z(), Complex(v.x(), -v.y()), Complex(v.x(), v.y()), -v.z();
  return s;
}

void require_over(const StateVector& start, const Ray& first, double tol, const char* who) {
  if (start.dim() != first.dim()) throw DimensionError(std::string(who) + ": start and path differ in dimension");
  if (!(projector_deviation(ray_of(start), first) <= tol))
    throw PathError(std::string(who) + ": start vector does not lie over the first path point");
}

}  // namespace

TangentVector::TangentVector(StateVector base, CVector vec, double tol)
    : base_(std::move(base)), vec_(std::move(vec)) {
  if (vec_.size() != base_.dim()) throw DimensionError("TangentVector: base and vector differ in dimension");
  const double re = hermitian_inner(base_.components(), vec_).real();
  if (!(std::abs(re) <= tol * std::max(1.0, vec_.norm())))
    throw TangencyError("TangentVector: Re<z, X> != 0, vector is not tangent to the sphere");
}

SplitTangent split_tangent(const TangentVector& t) {
  const CVector& z = t.base().components();
  CVector vertical = hermitian_inner(z, t.vec()) * z;
  CVector horizontal = t.vec() - vertical;
  return {std::move(vertical), std::move(horizontal)};
}

Complex connection_form(const TangentVector& t) {
  return {0.0, hermitian_inner(t.base().components(), t.vec()).imag()};
}

LatitudeLoop::LatitudeLoop(Direction axis, double theta, int steps)
    : axis_(std::move(axis)), theta_(theta), steps_(steps) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::invalid_argument("LatitudeLoop: theta must lie in [0, pi]");
  if (steps < 1) throw std::invalid_argument("LatitudeLoop: steps must be >= 1");
  const Eigen::Vector3d& a = axis_.vec();
  Eigen::Index k = 0;
  a.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d c = Eigen::Vector3d::Unit(k);
  e1_ = (c - c.dot(a) * a).normalized();
  e2_ = a.cross(e1_);
}

Eigen::Vector3d LatitudeLoop::point(double t) const {
  const double phi = 2.0 * kPi * t;
  return std::cos(theta_) * axis_.vec() + std::sin(theta_) * (std::cos(phi) * e1_ + std::sin(phi) * e2_);
}

BasePath LatitudeLoop::samples() const {
  BasePath out;
  out.reserve(static_cast<std::size_t>(steps_) + 1);
  for (int k = 0; k < steps_; ++k) out.push_back(ray_from_bloch(Direction::normalized(point(double(k) / steps_))));
  out.push_back(out.front());
  return out;
}

SmoothPath LatitudeLoop::smooth() const {
  const LatitudeLoop self = *this;
  auto projector = [self](double t) {
    return CMatrix(0.5 * (CMatrix::Identity(2, 2) + sigma_dot(self.point(t))));
  };
  auto velocity = [self](double t) {
    const double phi = 2.0 * kPi * t;
    const Eigen::Vector3d dn =
        2.0 * kPi * std::sin(self.theta_) * (-std::sin(phi) * self.e1_ + std::cos(phi) * self.e2_);
    return CMatrix(0.5 * sigma_dot(dn));
  };
  return SmoothPath{2, projector, velocity};
}

double LatitudeLoop::solid_angle() const { return 2.0 * kPi * (1.0 - std::cos(theta_)); }

double LatitudeLoop::expected_holonomy() const { return wrap_phase(kHolonomyOrientationSign * solid_angle() / 2.0); }

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::vector<StateVector> horizontal_lift(const StateVector& start, const BasePath& path, double tol) {
  if (path.empty()) throw PathError("horizontal_lift: empty path");
  require_over(start, path.front(), tol, "horizontal_lift");
  std::vector<StateVector> lift;
  lift.reserve(path.size());
  lift.push_back(start);
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (path[k].dim() != start.dim()) throw DimensionError("horizontal_lift: path changes dimension");
    if (!(fubini_study_distance(path[k - 1], path[k]) < kPi / 4))
      throw MeshError("horizontal_lift: consecutive path points are pi/4 or more apart");
    // Projecting onto the next line leaves <z_k, z_{k+1}> real and positive.
    CVector next = path[k].projector() * lift.back().components();
    const double n = next.norm();
    if (!(n > 1e-8)) throw MeshError("horizontal_lift: next line is orthogonal to the current lift");
    lift.push_back(trusted_state(next / n));
  }
  return lift;
}

StateVector parallel_transport(const StateVector& start, const BasePath& path, double tol) {
  return horizontal_lift(start, path, tol).back();
}

StateVector parallel_transport_rk4(const StateVector& start, const SmoothPath& path, int steps, double tol) {
  if (steps < 1) throw std::invalid_argument("parallel_transport_rk4: steps must be >= 1");
  if (path.dim != start.dim()) throw DimensionError("parallel_transport_rk4: start and path differ in dimension");
  require_over(start, trusted_ray(path.projector(0.0)), tol, "parallel_transport_rk4");

  // [P', P] is anti-Hermitian, so the exact flow is unitary.
  auto rhs = [&path](double t, const CVector& z) {
    const CMatrix p = path.projector(t);
    const CMatrix dp = path.velocity(t);
    return CVector(dp * (p * z) - p * (dp * z));
  };
  const double h = 1.0 / steps;
  CVector z = start.components();
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const CVector k1 = rhs(t, z);
    const CVector k2 = rhs(t + h / 2, z + (h / 2) * k1);
    const CVector k3 = rhs(t + h / 2, z + (h / 2) * k2);
    const CVector k4 = rhs(t + h, z + h * k3);
    z += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return StateVector::normalized(z);
}

double holonomy(const BasePath& loop, double tol) {
  if (loop.empty()) throw PathError("holonomy: empty loop");
  if (!(projector_deviation(loop.front(), loop.back()) <= tol)) throw PathError("holonomy: loop is not closed");
  const StateVector z0 = loop.front().representative();
  const StateVector end = parallel_transport(z0, loop, tol);
  return wrap_phase(std::arg(hermitian_inner(z0, end)));
}

double holonomy(const LatitudeLoop& loop) { return holonomy(loop.samples()); }

double holonomy_rk4(const LatitudeLoop& loop) {
  const SmoothPath path = loop.smooth();
  const StateVector z0 = trusted_ray(path.projector(0.0)).representative();
  const StateVector end = parallel_transport_rk4(z0, path, loop.steps());
  return wrap_phase(std::arg(hermitian_inner(z0, end)));
}

}  // namespace hopf
