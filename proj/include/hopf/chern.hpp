#pragma once

// First Chern numbers of line bundles over CP^1 = S^2 from link variables on
// a latitude-longitude mesh (the Fukui-Hatsugai-Suzuki construction).
//
// A bundle is described by a frame rule: a map from Bloch vectors to unit
// vectors of some C^m, defined up to phase at each point. Link variables
// U_ab = <f(a), f(b)>/|...| are gauge invariant around closed plaquettes, so
// the frame may be discontinuous. Each plaquette contributes its holonomy
// -arg(U_12 U_23 ... U_k1) with the boundary taken counterclockwise seen
// from outside the sphere; the total divided by 2 pi is c_1. With this
// orientation the tautological bundle has c_1 = -1 and its dual +1,
// consistent with kHolonomyOrientationSign.

#include <functional>
#include <string>

#include "hopf/ray.hpp"

namespace hopf {

class LineBundleModel {
 public:
  using FrameRule = std::function<CVector(const Eigen::Vector3d&)>;

  LineBundleModel(std::string name, FrameRule frame);

  /// The product bundle S^2 x C.
  static LineBundleModel trivial();
  /// gamma: the fibre over a line is the line itself.
  static LineBundleModel tautological();
  /// gamma^*, framed by complex conjugates of the tautological frame.
  static LineBundleModel dual();
  /// gamma^{(x) k} for k >= 0 and (gamma^*)^{(x) |k|} for k < 0.
  static LineBundleModel tautological_power(int k);

  LineBundleModel tensor(const LineBundleModel& other) const;
  /// k-fold tensor power, k >= 0 (k = 0 is the trivial bundle).
  LineBundleModel power(int k) const;

  const std::string& name() const { return name_; }
  CVector frame(const Eigen::Vector3d& n) const { return frame_(n); }

 private:
  std::string name_;
  FrameRule frame_;
};

struct ChernResult {
  int chern;
  /// Unrounded plaquette sum over 2 pi.
  double raw;
  /// Largest |plaquette phase|; must stay below pi/2.
  double max_plaquette_phase;
  int mesh;
  int plaquettes;
};

inline constexpr int kMinChernMesh = 8;
inline constexpr double kIntegralityTolerance = 1e-6;

/// Throws std::invalid_argument for mesh < kMinChernMesh and MeshError if a
/// plaquette phase reaches pi/2, a link overlap vanishes, or the total is
/// not within kIntegralityTolerance of an integer.
ChernResult chern_lattice(const LineBundleModel& bundle, int mesh);
int chern_number(const LineBundleModel& bundle, int mesh);

}  // namespace hopf
