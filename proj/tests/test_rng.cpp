#include <catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include "hopf/rng.hpp"

using namespace hopf;

TEST_CASE("splitmix64 reference values", "[rng]") {
  // First outputs of SplitMix64 seeded with 0 (state advanced by the gamma before mixing).
  CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64_mix(2 * 0x9E3779B97F4A7C15ULL) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("counter draws are random access and stream separated", "[rng]") {
  const CounterRng a(42, 0), b(42, 1), c(43, 0);
  CHECK(a.bits(1000) == CounterRng(42, 0).bits(1000));
  CHECK(a.bits(5) != b.bits(5));
  CHECK(a.bits(5) != c.bits(5));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform and normal moments", "[rng]") {
  const CounterRng rng(7, 3);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    su += rng.uniform(i);
    const double g = rng.normal(n + i);
    sn += g;
    sn2 += g * g;
  }
  // 5 sigma bands
  CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sn / n) < 5 / std::sqrt(double(n)));
  CHECK(std::abs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("random samplers land on their manifolds", "[rng]") {
  const CounterRng rng(9, 0);
  for (std::uint64_t i = 0; i < 200; ++i) {
    CHECK(std::abs(random_state(rng, i, 4).components().squaredNorm() - 1.0) < 1e-14);
    CHECK(std::abs(random_direction(rng, i).vec().squaredNorm() - 1.0) < 1e-14);
    const CMatrix u = random_su2(rng, i);
    CHECK((u * u.adjoint() - CMatrix::Identity(2, 2)).norm() < 1e-14);
    CHECK(std::abs(u.determinant() - Complex(1.0)) < 1e-14);
  }
}
