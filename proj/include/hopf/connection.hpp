#pragma once

// The connection on S^{2n-1} -> CP^{n-1} induced by the Hermitian metric of
// C^n. At z the tangent space splits as
//
//   vertical   V_z = { i t z : t real }          (the fibre direction)
//   horizontal H_z = { X : <z, X> = 0 }
//
// and the connection one-form is omega_z(X) = <z, X>, which is purely
// imaginary on tangent vectors. At e = (1, 0, ..., 0) this is
// V = {(it, 0, ..., 0)}, H = {(0, z_2, ..., z_n)}.
//
// Parallel transport lifts a path of rays to a horizontal path on the
// sphere. Two independent schemes are provided:
//
//  * parallel_transport: discrete projection z_{k+1} = P_{k+1} z_k / norm,
//    which makes every overlap <z_k, z_{k+1}> real and positive;
//  * parallel_transport_rk4: RK4 on dz/dt = [P', P] z for a smooth
//    projector path P(t), whose solution satisfies <z, z'> = 0.

#include <functional>
#include <vector>

#include "hopf/ray.hpp"

namespace hopf {

/// Holonomy sign for latitude loops traversed counterclockwise as seen from
/// the +axis pole: the transported vector returns multiplied by
/// exp(i * kHolonomyOrientationSign * Omega / 2), Omega the enclosed solid
/// angle. Pinned by the connection tests.
inline constexpr int kHolonomyOrientationSign = -1;

/// Default tolerance for "this vector sits over that ray".
inline constexpr double kPathTolerance = 1e-10;

/// X tangent to S^{2n-1} at z, i.e. Re<z, X> = 0.
class TangentVector {
 public:
  /// Throws TangencyError if |Re<z, X>| > tol * max(1, ||X||).
  TangentVector(StateVector base, CVector vec, double tol = kDefaultTolerance);

  const StateVector& base() const { return base_; }
  const CVector& vec() const { return vec_; }

 private:
  StateVector base_;
  CVector vec_;
};

struct SplitTangent {
  CVector vertical;
  CVector horizontal;
};

/// vertical = <z, X> z, horizontal = X - vertical.
SplitTangent split_tangent(const TangentVector& t);

/// omega(X) = <z, X>; the real part is dropped (it is zero up to the
/// tangency tolerance).
Complex connection_form(const TangentVector& t);

/// Sampled path in CP^{n-1}.
using BasePath = std::vector<Ray>;

/// Differentiable path t in [0, 1] -> P(t), with dP/dt.
struct SmoothPath {
  Eigen::Index dim;
  std::function<CMatrix(double)> projector;
  std::function<CMatrix(double)> velocity;
};

/// The circle of polar angle theta about `axis` on the Bloch sphere,
/// traversed once counterclockwise as seen from the +axis pole, starting at
/// the point tilted towards the first frame vector orthogonal to the axis.
class LatitudeLoop {
 public:
  /// Throws std::invalid_argument unless 0 <= theta <= pi and steps >= 1.
  LatitudeLoop(Direction axis, double theta, int steps);

  const Direction& axis() const { return axis_; }
  double theta() const { return theta_; }
  int steps() const { return steps_; }

  /// Bloch vector at parameter t in [0, 1].
  Eigen::Vector3d point(double t) const;
  /// steps + 1 rays; the last equals the first exactly.
  BasePath samples() const;
  SmoothPath smooth() const;
  /// 2 pi (1 - cos theta).
  double solid_angle() const;
  /// kHolonomyOrientationSign * Omega / 2, wrapped to (-pi, pi].
  double expected_holonomy() const;

 private:
  Direction axis_;
  double theta_;
  int steps_;
  Eigen::Vector3d e1_, e2_;
};

/// Wraps an angle to (-pi, pi].
double wrap_phase(double phi);

/// Every lift point z_0 .. z_N of the discrete horizontal lift.
/// Throws PathError if start is not over path.front() (within tol) and
/// MeshError if two consecutive rays are pi/4 or more apart.
std::vector<StateVector> horizontal_lift(const StateVector& start, const BasePath& path,
                                         double tol = kPathTolerance);

/// Endpoint of horizontal_lift.
StateVector parallel_transport(const StateVector& start, const BasePath& path, double tol = kPathTolerance);

/// Endpoint of the RK4 solution of dz/dt = [P', P] z over `steps` equal steps.
StateVector parallel_transport_rk4(const StateVector& start, const SmoothPath& path, int steps,
                                   double tol = kPathTolerance);

/// Phase phi in (-pi, pi] with transport(z0) = e^{i phi} z0 around a closed
/// loop. Throws PathError if the loop is not closed.
double holonomy(const BasePath& loop, double tol = kPathTolerance);
double holonomy(const LatitudeLoop& loop);
double holonomy_rk4(const LatitudeLoop& loop);

}  // namespace hopf
