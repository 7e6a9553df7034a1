#include "hopf/fibration.hpp"

#include <numbers>
#include <stdexcept>

#include "hopf/errors.hpp"

namespace hopf {

BundleSpec::BundleSpec(int n_) : n(n_) {
  if (n < 1) throw std::invalid_argument("BundleSpec: n must be >= 1");
}

Ray hopf_project(const StateVector& z) { return ray_of(z); }

std::vector<StateVector> fiber_at(const Ray& p, int samples) {
  if (samples <= 0) throw std::invalid_argument("fiber_at: samples must be positive");
  const StateVector z0 = p.representative();
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    // Quarter turns are exact so that the phase orbit of a basis vector is exact.
    Complex phase;
    if ((4 * k) % samples == 0) {
      static constexpr Complex kQuarter[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      phase = kQuarter[(4 * k / samples) % 4];
    } else {
      phase = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    }
    out.push_back(trusted_state(z0.components() * phase));
  }
  return out;
}

StateVector include_sphere(const StateVector& z, Eigen::Index target_dim) {
  if (target_dim < z.dim()) throw DimensionError("include_sphere: target dimension smaller than source");
  CVector out = CVector::Zero(target_dim);
  out.head(z.dim()) = z.components();
  return trusted_state(std::move(out));
}

Ray include_ray(const Ray& p, Eigen::Index target_dim) {
  if (target_dim < p.dim()) throw DimensionError("include_ray: target dimension smaller than source");
  CMatrix out = CMatrix::Zero(target_dim, target_dim);
  out.topLeftCorner(p.dim(), p.dim()) = p.projector();
  return trusted_ray(std::move(out));
}

Direction bloch_point(const Ray& p) {
  if (p.dim() != 2) throw DimensionError("bloch_point: ray must lie in CP^1");
  const CMatrix& m = p.projector();
  // tr(P sigma_x) = 2 Re P_01, tr(P sigma_y) = -2 Im P_01, tr(P sigma_z) = P_00 - P_11
  const double x = 2.0 * m(1, 0).real();
  const double y = 2.0 * m(1, 0).imag();
  const double z = (m(0, 0) - m(1, 1)).real();
  return Direction::normalized(x, y, z);
}

Ray ray_from_bloch(const Direction& n) {
  return trusted_ray(0.5 * (CMatrix::Identity(2, 2) + n_dot_sigma(n)));
}

}  // namespace hopf
