#include "hopf/chern.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

constexpr double kPi = std::numbers::pi;

CVector tautological_frame(const Eigen::Vector3d& n) {
  return spinor_of(Direction::normalized(n), +1).components();
}

// Unit-modulus link variable between two frame vectors.
Complex link(const CVector& a, const CVector& b) {
  const Complex u = hermitian_inner(a, b);
  const double m = std::abs(u);
  if (!(m > 1e-12)) throw MeshError("chern_lattice: vanishing link overlap, refine the mesh");
  return u / m;
}

}  // namespace

LineBundleModel::LineBundleModel(std::string name, FrameRule frame) : name_(std::move(name)), frame_(std::move(frame)) {
  if (!frame_) throw std::invalid_argument("LineBundleModel: empty frame rule");
}

LineBundleModel LineBundleModel::trivial() {
  return {"trivial", [](const Eigen::Vector3d&) { return CVector::Ones(1); }};
}

LineBundleModel LineBundleModel::tautological() { return {"tautological", tautological_frame}; }

LineBundleModel LineBundleModel::dual() {
  return {"dual", [](const Eigen::Vector3d& n) { return CVector(tautological_frame(n).conjugate()); }};
}

LineBundleModel LineBundleModel::tautological_power(int k) {
  if (k >= 0) return tautological().power(k);
  return dual().power(-k);
}

LineBundleModel LineBundleModel::tensor(const LineBundleModel& other) const {
  FrameRule a = frame_, b = other.frame_;
  return {"(" + name_ + ")x(" + other.name_ + ")", [a, b](const Eigen::Vector3d& n) { return kron(a(n), b(n)); }};
}

LineBundleModel LineBundleModel::power(int k) const {
  if (k < 0) throw std::invalid_argument("LineBundleModel::power: exponent must be >= 0");
  if (k == 0) return trivial();
  FrameRule f = frame_;
  return {name_ + "^" + std::to_string(k), [f, k](const Eigen::Vector3d& n) {
            const CVector base = f(n);
            CVector out = base;
            for (int i = 1; i < k; ++i) out = kron(out, base);
            return out;
          }};
}

ChernResult chern_lattice(const LineBundleModel& bundle, int mesh) {
  if (mesh < kMinChernMesh) throw std::invalid_argument("chern_lattice: mesh must be >= 8");
  const int m = mesh;

  // Vertices: north pole, rings i = 1 .. m-1 of m points each, south pole.
  auto vertex = [m](int i, int j) {
    const double theta = kPi * i / m;
    const double phi = 2.0 * kPi * j / m;
    return Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  };
  const CVector north = bundle.frame(Eigen::Vector3d::UnitZ());
  const CVector south = bundle.frame(-Eigen::Vector3d::UnitZ());
  std::vector<CVector> ring(static_cast<std::size_t>((m - 1) * m));
  auto at = [&ring, m](int i, int j) -> const CVector& {
    return ring[static_cast<std::size_t>((i - 1) * m + (j % m))];
  };
  for (int i = 1; i < m; ++i)
    for (int j = 0; j < m; ++j) ring[static_cast<std::size_t>((i - 1) * m + j)] = bundle.frame(vertex(i, j));

  double total = 0.0;
  double max_phase = 0.0;
  int count = 0;
  // Boundary order: +theta then +phi, i.e. counterclockwise seen from outside.
  auto plaquette = [&](std::initializer_list<const CVector*> corners) {
    Complex w = 1.0;
    const CVector* const* c = corners.begin();
    const std::size_t k = corners.size();
    for (std::size_t e = 0; e < k; ++e) w *= link(*c[e], *c[(e + 1) % k]);
    const double phase = -std::arg(w);
    if (!(std::abs(phase) < kPi / 2)) throw MeshError("chern_lattice: plaquette phase reached pi/2, refine the mesh");
    max_phase = std::max(max_phase, std::abs(phase));
    total += phase;
    ++count;
  };
  for (int j = 0; j < m; ++j) plaquette({&north, &at(1, j), &at(1, j + 1)});
  for (int i = 1; i < m - 1; ++i)
    for (int j = 0; j < m; ++j) plaquette({&at(i, j), &at(i + 1, j), &at(i + 1, j + 1), &at(i, j + 1)});
  for (int j = 0; j < m; ++j) plaquette({&at(m - 1, j), &south, &at(m - 1, j + 1)});

  const double raw = total / (2.0 * kPi);
  const double rounded = std::round(raw);
  if (!(std::abs(raw - rounded) < kIntegralityTolerance))
    throw MeshError("chern_lattice: plaquette sum is not an integer multiple of 2 pi");
  return ChernResult{static_cast<int>(rounded), raw, max_phase, m, count};
}

int chern_number(const LineBundleModel& bundle, int mesh) { return chern_lattice(bundle, mesh).chern; }

}  // namespace hopf
