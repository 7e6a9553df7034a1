#include <catch_amalgamated.hpp>

#include "hopf/errors.hpp"
#include "hopf/fibration.hpp"
#include "hopf/ray.hpp"
#include "hopf/rng.hpp"
#include "oracles.hpp"

using namespace hopf;
using Catch::Matchers::WithinAbs;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex I(0.0, 1.0);

StateVector sv(std::initializer_list<Complex> xs) { return StateVector(oracle::vec(xs)); }

}  // namespace

TEST_CASE("hermitian_inner examples", "[ray]") {
  CHECK(hermitian_inner(sv({1, 0}), sv({1, 0})) == Complex(1.0));
  CHECK(hermitian_inner(sv({1, 0}), sv({0, 1})) == Complex(0.0));
  const StateVector a = sv({kInvSqrt2, kInvSqrt2 * I});
  const StateVector b = sv({kInvSqrt2, -kInvSqrt2 * I});
  CHECK(std::abs(hermitian_inner(a, b)) < 1e-15);
  CHECK(std::abs(oracle::inner(a.components(), b.components())) < 1e-15);
}

TEST_CASE("hermitian_inner is conjugate-linear in the first slot", "[ray]") {
  const CounterRng rng(11, 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CVector a = random_state(rng, 3 * i, 3).components();
    const CVector b = random_state(rng, 3 * i + 1, 3).components();
    const Complex alpha(rng.normal(7000 + i), rng.normal(9000 + i));
    CHECK(std::abs(hermitian_inner(CVector(alpha * a), b) - std::conj(alpha) * hermitian_inner(a, b)) < 1e-12);
    CHECK(std::abs(hermitian_inner(a, b) - oracle::inner(a, b)) < 1e-14);
  }
}

TEST_CASE("hermitian_inner rejects mismatched dimensions", "[ray]") {
  CHECK_THROWS_AS(hermitian_inner(sv({1, 0}), StateVector::basis(4, 0)), DimensionError);
}

TEST_CASE("tensor_product basis order", "[ray]") {
  const StateVector up = StateVector::basis(2, 0), down = StateVector::basis(2, 1);
  CHECK(tensor_product(up, down).components() == oracle::vec({0, 1, 0, 0}));
  CHECK(tensor_product(down, up).components() == oracle::vec({0, 0, 1, 0}));
  const CVector s = kInvSqrt2 * (tensor_product(up, down).components() - tensor_product(down, up).components());
  CHECK(s.isApprox(oracle::vec({0, kInvSqrt2, -kInvSqrt2, 0})));
}

TEST_CASE("tensor_product is bilinear and unit", "[ray]") {
  const CounterRng rng(12, 0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const StateVector a = random_state(rng, 2 * i, 2), b = random_state(rng, 2 * i + 1, 2);
    const StateVector ab = tensor_product(a, b);
    CHECK_THAT(ab.components().norm(), WithinAbs(1.0, 1e-14));
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q) CHECK(std::abs(ab[2 * p + q] - a[p] * b[q]) < 1e-15);
    // phase in either slot moves the product by the same phase
    CHECK((tensor_product(a.with_phase(0.3), b).components() - tensor_product(a, b.with_phase(0.3)).components())
              .norm() < 1e-14);
  }
}

TEST_CASE("StateVector rejects non-unit input", "[ray]") {
  CHECK_THROWS_AS(StateVector(oracle::vec({1, 1})), NormalizationError);
  CHECK_THROWS_AS(StateVector::normalized(oracle::vec({0, 0})), NormalizationError);
  CHECK_NOTHROW(StateVector(oracle::vec({1 + 1e-13, 0})));
}

TEST_CASE("ray_of examples", "[ray]") {
  CMatrix up(2, 2);
  up << 1, 0, 0, 0;
  CHECK(ray_of(sv({1, 0})).projector() == up);
  CHECK(projector_deviation(ray_of(sv({std::polar(1.0, oracle::kPi / 3), 0})), trusted_ray(up)) <= 1e-15);
  const CMatrix half = CMatrix::Constant(2, 2, 0.5);
  CHECK((ray_of(sv({kInvSqrt2, kInvSqrt2})).projector() - half).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ray_of is phase invariant and produces valid projectors", "[ray]") {
  const CounterRng states(13, 0), phases(13, 1);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(i % 5);
    const StateVector z = random_state(states, i, dim);
    const Ray r = ray_of(z);
    worst = std::max(worst, projector_deviation(ray_of(z.with_phase(random_phase(phases, i))), r));
    CHECK_NOTHROW(Ray(r.projector()));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Ray validation", "[ray]") {
  CMatrix not_idempotent(2, 2);
  not_idempotent << 0.5, 0, 0, 0.5;
  CHECK_THROWS_AS(Ray(not_idempotent), ProjectorError);
  CMatrix not_hermitian(2, 2);
  not_hermitian << 1, 1, 0, 0;
  CHECK_THROWS_AS(Ray(not_hermitian), ProjectorError);
  CHECK_THROWS_AS(Ray(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("representative fixes the gauge on the first nonzero component", "[ray]") {
  const StateVector z = sv({0, std::polar(0.6, 1.1), std::polar(0.8, -2.0)});
  const StateVector r = ray_of(z).representative();
  CHECK(r[0] == Complex(0.0));
  CHECK(r[1].imag() == 0.0);
  CHECK_THAT(r[1].real(), WithinAbs(0.6, 1e-15));
  CHECK(std::abs(r[2] - std::polar(0.8, -3.1)) < 1e-14);
  // components at or below the threshold do not fix the gauge
  const CVector g = gauge_fixed(oracle::vec({Complex(0, 5e-11), Complex(0, 1)}));
  CHECK(g[1] == Complex(1.0));
}

TEST_CASE("fubini_study_distance examples", "[ray]") {
  const Ray up = ray_of(sv({1, 0})), down = ray_of(sv({0, 1})), plus = ray_of(sv({kInvSqrt2, kInvSqrt2}));
  CHECK(fubini_study_distance(plus, plus) == 0.0);
  CHECK_THAT(fubini_study_distance(up, down), WithinAbs(oracle::kPi / 2, 1e-15));
  CHECK_THAT(fubini_study_distance(up, plus), WithinAbs(oracle::kPi / 4, 1e-15));
  CHECK_THROWS_AS(fubini_study_distance(up, ray_of(StateVector::basis(4, 0))), DimensionError);
}

TEST_CASE("fubini_study_distance is a metric on random rays", "[ray]") {
  const CounterRng rng(14, 0);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Eigen::Index dim = i % 2 ? 4 : 2;
    const Ray p = ray_of(random_state(rng, 3 * i, dim));
    const Ray q = ray_of(random_state(rng, 3 * i + 1, dim));
    const Ray r = ray_of(random_state(rng, 3 * i + 2, dim));
    const double pq = fubini_study_distance(p, q);
    CHECK(pq >= 0.0);
    CHECK(pq <= oracle::kPi / 2 + 1e-15);
    CHECK_THAT(pq, WithinAbs(fubini_study_distance(q, p), 1e-15));
    CHECK(fubini_study_distance(p, r) <= pq + fubini_study_distance(q, r) + 1e-9);
    // closed form via the overlap
    const double overlap = std::abs(oracle::inner(p.representative().components(), q.representative().components()));
    CHECK_THAT(pq, WithinAbs(std::acos(std::min(1.0, overlap)), 1e-7));
  }
}

TEST_CASE("spinor_of examples", "[ray]") {
  const Direction z(0, 0, 1), x(1, 0, 0);
  CHECK(spinor_of(z, +1).components() == oracle::vec({1, 0}));
  CHECK(spinor_of(z, -1).components() == oracle::vec({0, 1}));
  CHECK((spinor_of(x, +1).components() - oracle::vec({kInvSqrt2, kInvSqrt2})).norm() < 1e-15);
  CHECK_THROWS_AS(spinor_of(z, 0), std::invalid_argument);
}

TEST_CASE("spinor_of gives orthogonal gauge-fixed eigenvectors", "[ray]") {
  const CounterRng rng(15, 0);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Direction n = random_direction(rng, i);
    for (int s : {+1, -1}) {
      const StateVector chi = spinor_of(n, s);
      CHECK((n_dot_sigma(n) * chi.components() - double(s) * chi.components()).norm() < 1e-12);
      CHECK(chi[0].imag() == 0.0);
      CHECK(chi[0].real() >= 0.0);
      // same ray as the polar-angle closed form
      const CVector ref = oracle::spinor_polar(n.x(), n.y(), n.z(), s);
      CHECK_THAT(std::abs(oracle::inner(ref, chi.components())), WithinAbs(1.0, 1e-12));
    }
    CHECK(std::abs(hermitian_inner(spinor_of(n, +1), spinor_of(n, -1))) <= 1e-12);
  }
}

TEST_CASE("Direction validation", "[ray]") {
  CHECK_THROWS_AS(Direction(1, 1, 0), NormalizationError);
  CHECK_THROWS_AS(Direction::normalized(0, 0, 0), NormalizationError);
  const Direction d = Direction::normalized(0, 3, 4);
  CHECK_THAT(d.y(), WithinAbs(0.6, 1e-15));
  CHECK((-d).z() == -d.z());
}
