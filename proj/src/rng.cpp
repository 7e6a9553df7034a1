#include "hopf/rng.hpp"

#include <cmath>
#include <numbers>

namespace hopf {

double CounterRng::normal(std::uint64_t counter) const {
  // 1 - u lies in (0, 1], so the logarithm is finite.
  const double u1 = 1.0 - uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

StateVector random_state(const CounterRng& rng, std::uint64_t counter, Eigen::Index dim) {
  const std::uint64_t base = counter * 64;
  for (std::uint64_t attempt = 0;; ++attempt) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const std::uint64_t c = base + attempt * 2 * dim + 2 * i;
      v[i] = Complex(rng.normal(c), rng.normal(c + 1));
    }
    if (v.norm() > 1e-8) return StateVector::normalized(v);
  }
}

Direction random_direction(const CounterRng& rng, std::uint64_t counter) {
  const std::uint64_t base = counter * 64;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t c = base + attempt * 3;
    Eigen::Vector3d v(rng.normal(c), rng.normal(c + 1), rng.normal(c + 2));
    if (v.norm() > 1e-8) return Direction::normalized(v);
  }
}

double random_phase(const CounterRng& rng, std::uint64_t counter) {
  return 2.0 * std::numbers::pi * rng.uniform(counter);
}

CMatrix random_su2(const CounterRng& rng, std::uint64_t counter) {
  // A uniform unit vector (a, b) of C^2 gives the Haar element [[a, -b*], [b, a*]].
  const StateVector ab = random_state(rng, counter, 2);
  const Complex a = ab[0], b = ab[1];
  CMatrix u(2, 2);
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

}  // namespace hopf
