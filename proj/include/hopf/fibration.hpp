#pragma once

// The complex Hopf bundles U(1) -> S^{2n-1} -> CP^{n-1} and the inclusions
// S^3 -> S^7, CP^1 -> CP^3 that make the collapse square
//
//      S^3  --incl-->  S^7
//       | h1            | h3
//      CP^1 --incl-->  CP^3
//
// commute.

#include <vector>

#include "hopf/ray.hpp"

namespace hopf {

/// The bundle with total space S^{2n-1} and base CP^{n-1}.
struct BundleSpec {
  explicit BundleSpec(int n);

  int n;
  int sphere_dim() const { return 2 * n - 1; }
  int base_dim() const { return n - 1; }
};

/// The bundle projection h_{n-1}(z) = z C*. Equal to ray_of(z).
Ray hopf_project(const StateVector& z);

/// The U(1) orbit over p, sampled at e^{2 pi i k / samples} z0 for
/// k = 0 .. samples - 1, z0 = p.representative().
/// Throws std::invalid_argument if samples == 0.
std::vector<StateVector> fiber_at(const Ray& p, int samples);

/// (z_1, ..., z_n) -> (z_1, ..., z_n, 0, ..., 0). Throws DimensionError if
/// target_dim < z.dim().
StateVector include_sphere(const StateVector& z, Eigen::Index target_dim = 4);

/// Block embedding of P into the top-left corner of a target_dim projector.
Ray include_ray(const Ray& p, Eigen::Index target_dim = 4);

/// Bloch vector (tr P sigma_x, tr P sigma_y, tr P sigma_z) of a CP^1 point.
Direction bloch_point(const Ray& p);

/// Inverse of bloch_point: P = (1 + n . sigma) / 2.
Ray ray_from_bloch(const Direction& n);

}  // namespace hopf
