#include <algorithm>

#include <catch_amalgamated.hpp>

#include "hopf/connection.hpp"
#include "hopf/errors.hpp"
#include "hopf/fibration.hpp"
#include "hopf/rng.hpp"
#include "oracles.hpp"

using namespace hopf;
using Catch::Matchers::WithinAbs;

namespace {

const Complex I(0.0, 1.0);
constexpr double kPi = oracle::kPi;

TangentVector random_tangent(const CounterRng& rng, std::uint64_t i, Eigen::Index n) {
  const StateVector z = random_state(rng, 2 * i, n);
  CVector x = random_state(rng, 2 * i + 1, n).components() * (1.0 + rng.uniform(1u << 30 | i));
  x -= hermitian_inner(z.components(), x).real() * z.components();
  return TangentVector(z, x);
}

SmoothPath included(const SmoothPath& p) {
  auto pad = [](const CMatrix& m) {
    CMatrix out = CMatrix::Zero(4, 4);
    out.topLeftCorner(2, 2) = m;
    return out;
  };
  return SmoothPath{4, [p, pad](double t) { return pad(p.projector(t)); },
                    [p, pad](double t) { return pad(p.velocity(t)); }};
}

}  // namespace

TEST_CASE("split_tangent at e reproduces the explicit vertical and horizontal spaces", "[connection]") {
  SECTION("vertical vector in S^7") {
    const StateVector e = StateVector::basis(4, 0);
    const CVector x = oracle::vec({2.5 * I, 0, 0, 0});
    const SplitTangent s = split_tangent(TangentVector(e, x));
    CHECK(s.vertical == x);
    CHECK(s.horizontal.cwiseAbs().maxCoeff() <= 1e-14);
  }
  SECTION("horizontal vector in S^3") {
    const StateVector e = StateVector::basis(2, 0);
    const CVector x = oracle::vec({0, Complex(3, 1)});
    const SplitTangent s = split_tangent(TangentVector(e, x));
    CHECK(s.vertical.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(s.horizontal == x);
  }
  SECTION("mixed vector in S^3") {
    const SplitTangent s = split_tangent(TangentVector(StateVector::basis(2, 0), oracle::vec({I, 1})));
    CHECK(s.vertical == oracle::vec({I, 0}));
    CHECK(s.horizontal == oracle::vec({0, 1}));
  }
}

TEST_CASE("connection_form examples", "[connection]") {
  const StateVector e = StateVector::basis(2, 0);
  CHECK(connection_form(TangentVector(e, oracle::vec({I, 0}))) == I);
  CHECK(connection_form(TangentVector(e, oracle::vec({0, Complex(2, -7)}))) == Complex(0.0));
  CHECK(connection_form(TangentVector(e, oracle::vec({I, 1}))) == I);
}

TEST_CASE("non-tangent vectors are rejected", "[connection]") {
  CHECK_THROWS_AS(TangentVector(StateVector::basis(2, 0), oracle::vec({1, 0})), TangencyError);
  CHECK_THROWS_AS(TangentVector(StateVector::basis(2, 0), oracle::vec({0, 0, 1})), DimensionError);
}

TEST_CASE("splitting properties on random tangents", "[connection]") {
  const CounterRng rng(41, 0);
  for (Eigen::Index n : {2, 4}) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const TangentVector t = random_tangent(rng, i, n);
      const CVector& z = t.base().components();
      const SplitTangent s = split_tangent(t);
      // vertical = i t z
      const Complex c = hermitian_inner(z, s.vertical);
      CHECK(std::abs(c.real()) <= 1e-12);
      CHECK((s.vertical - c * z).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(std::abs(hermitian_inner(z, s.horizontal)) <= 1e-12);
      CHECK((s.vertical + s.horizontal - t.vec()).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(std::abs(hermitian_inner(s.vertical, s.horizontal).real()) <= 1e-12);
      // idempotence
      const SplitTangent again = split_tangent(TangentVector(t.base(), s.horizontal));
      CHECK(again.vertical.cwiseAbs().maxCoeff() <= 1e-12);
      // omega kills H and reads off V
      CHECK(std::abs(connection_form(TangentVector(t.base(), s.horizontal))) <= 1e-12);
      CHECK(std::abs(connection_form(TangentVector(t.base(), s.vertical)) - hermitian_inner(z, t.vec())) <= 1e-12);
      CHECK(connection_form(t).real() == 0.0);
    }
  }
}

TEST_CASE("constant path transports trivially", "[connection]") {
  const StateVector z(oracle::vec({0.6, Complex(0, 0.8)}));
  const BasePath path(50, ray_of(z));
  CHECK((parallel_transport(z, path).components() - z.components()).norm() <= 1e-15);
}

TEST_CASE("transport around the equator negates the start vector", "[connection]") {
  const LatitudeLoop equator(Direction(0, 0, 1), kPi / 2, 10000);
  const StateVector start = ray_from_bloch(Direction(1, 0, 0)).representative();
  const StateVector rk4 = parallel_transport_rk4(start, equator.smooth(), equator.steps());
  const StateVector disc = parallel_transport(start, equator.samples());
  const Complex expected = std::polar(1.0, oracle::latitude_phase(kPi / 2));
  CHECK((rk4.components() - expected * start.components()).norm() <= 1e-6);
  CHECK((disc.components() - expected * start.components()).norm() <= 1e-6);
  CHECK((rk4.components() + start.components()).norm() <= 1e-6);
}

TEST_CASE("transport in CP^3 along an included loop matches CP^1 transport", "[connection]") {
  const CounterRng rng(42, 0);
  for (std::uint64_t i = 0; i < 5; ++i) {
    const LatitudeLoop loop(random_direction(rng, i), 0.3 + 0.5 * i, 2000);
    const BasePath small = loop.samples();
    BasePath big;
    for (const Ray& r : small) big.push_back(include_ray(r));
    const StateVector z = small.front().representative().with_phase(0.7 * i);
    const StateVector lifted_small = parallel_transport(z, small);
    const StateVector lifted_big = parallel_transport(include_sphere(z), big);
    CHECK((lifted_big.components() - include_sphere(lifted_small).components()).norm() <= 1e-9);

    const StateVector rk_small = parallel_transport_rk4(z, loop.smooth(), 2000);
    const StateVector rk_big = parallel_transport_rk4(include_sphere(z), included(loop.smooth()), 2000);
    CHECK((rk_big.components() - include_sphere(rk_small).components()).norm() <= 1e-9);
  }
}

TEST_CASE("transport preserves norm and horizontality", "[connection]") {
  const LatitudeLoop loop(Direction::normalized(1, 2, 3), 1.1, 10000);
  const BasePath path = loop.samples();
  const auto lift = horizontal_lift(path.front().representative(), path);
  REQUIRE(lift.size() == path.size());
  double worst_im = 0.0;
  for (std::size_t k = 0; k + 1 < lift.size(); ++k) {
    const Complex o = hermitian_inner(lift[k], lift[k + 1]);
    CHECK(o.real() > 0.0);
    worst_im = std::max(worst_im, std::abs(o.imag()));
    CHECK(projector_deviation(ray_of(lift[k]), path[k]) <= 1e-12);
  }
  CHECK(worst_im <= 1e-12);
  CHECK_THAT(lift.back().components().norm(), WithinAbs(1.0, 1e-9));
  const StateVector rk = parallel_transport_rk4(path.front().representative(), loop.smooth(), 10000);
  CHECK_THAT(rk.components().norm(), WithinAbs(1.0, 1e-9));
}

TEST_CASE("transport is U(1)-equivariant", "[connection]") {
  const CounterRng rng(43, 0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const LatitudeLoop loop(random_direction(rng, i), 2.5 * rng.uniform(1000 + i) + 0.1, 1000);
    const BasePath path = loop.samples();
    const StateVector z = path.front().representative();
    const double rho = random_phase(rng, 2000 + i);
    const CVector lhs = parallel_transport(z.with_phase(rho), path).components();
    const CVector rhs = std::polar(1.0, rho) * parallel_transport(z, path).components();
    CHECK((lhs - rhs).norm() <= 1e-9);
    const CVector lhs4 = parallel_transport_rk4(z.with_phase(rho), loop.smooth(), 1000).components();
    const CVector rhs4 = std::polar(1.0, rho) * parallel_transport_rk4(z, loop.smooth(), 1000).components();
    CHECK((lhs4 - rhs4).norm() <= 1e-9);
  }
}

TEST_CASE("holonomy examples and orientation sign", "[connection]") {
  CHECK(kHolonomyOrientationSign == -1);

  const Ray p = ray_from_bloch(Direction::normalized(1, 1, 0));
  CHECK(holonomy(BasePath(10, p)) == 0.0);
  CHECK(holonomy(LatitudeLoop(Direction(0, 0, 1), 0.0, 100)) == 0.0);

  const double eq = holonomy(LatitudeLoop(Direction(0, 0, 1), kPi / 2, 10000));
  CHECK_THAT(std::abs(eq), WithinAbs(kPi, 1e-6));

  // Measured sign: counterclockwise about +z at theta = pi/3 gives -pi/2.
  const double third = holonomy(LatitudeLoop(Direction(0, 0, 1), kPi / 3, 10000));
  CHECK_THAT(third, WithinAbs(-kPi / 2, 1e-6));
  CHECK_THAT(third, WithinAbs(kHolonomyOrientationSign * kPi / 2, 1e-6));
}

TEST_CASE("latitude holonomy equals half the enclosed solid angle", "[connection]") {
  for (double theta : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const LatitudeLoop loop(Direction(0, 0, 1), theta, 10000);
    const double expected = oracle::latitude_phase(theta);
    CHECK(std::abs(oracle::wrap(holonomy(loop) - expected)) <= 1e-6);
    CHECK(std::abs(oracle::wrap(holonomy_rk4(loop) - expected)) <= 1e-6);
    CHECK(std::abs(oracle::wrap(loop.expected_holonomy() - expected)) <= 1e-14);
  }
}

TEST_CASE("holonomy depends only on the polar angle, not the axis", "[connection]") {
  const CounterRng rng(44, 0);
  for (std::uint64_t i = 0; i < 10; ++i) {
    const double theta = kPi * rng.uniform(5000 + i);
    const LatitudeLoop loop(random_direction(rng, i), theta, 4000);
    CHECK(std::abs(oracle::wrap(holonomy_rk4(loop) - oracle::latitude_phase(theta))) <= 1e-9);
  }
}

TEST_CASE("reversing a loop conjugates its holonomy", "[connection]") {
  BasePath loop = LatitudeLoop(Direction::normalized(0, 1, 1), 0.9, 5000).samples();
  const double forward = holonomy(loop);
  std::reverse(loop.begin(), loop.end());
  CHECK(std::abs(oracle::wrap(holonomy(loop) + forward)) <= 1e-12);
}

TEST_CASE("discrete holonomy converges at second order", "[connection]") {
  for (double theta : {kPi / 6, kPi / 3, 2 * kPi / 3}) {
    const double expected = oracle::latitude_phase(theta);
    const double coarse = std::abs(oracle::wrap(holonomy(LatitudeLoop(Direction(0, 0, 1), theta, 1000)) - expected));
    const double fine = std::abs(oracle::wrap(holonomy(LatitudeLoop(Direction(0, 0, 1), theta, 10000)) - expected));
    CHECK(coarse / fine >= 50.0);
  }
  // On a great circle the discrete lift is exact at any resolution.
  const double eq = std::abs(oracle::wrap(holonomy(LatitudeLoop(Direction(0, 0, 1), kPi / 2, 1000)) + kPi));
  CHECK(eq <= 1e-12);
}

TEST_CASE("discrete and RK4 schemes agree", "[connection]") {
  for (double theta : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const LatitudeLoop loop(Direction::normalized(1, -1, 2), theta, 100000);
    CHECK(std::abs(oracle::wrap(holonomy(loop) - holonomy_rk4(loop))) <= 1e-8);
  }
}

TEST_CASE("holonomy equals the loop integral of the connection form", "[connection]") {
  // Section c(phi) = (cos t/2, e^{i phi} sin t/2) over the latitude at polar angle t.
  // Horizontal lift z = e^{i a} c has a' = -omega(c')/i, so the holonomy is -int omega(c') / i.
  for (double theta : {0.4, 1.3, 2.2}) {
    const int n = 2000;
    double integral = 0.0;
    for (int k = 0; k < n; ++k) {
      const double phi = 2 * kPi * (k + 0.5) / n;
      const StateVector c(oracle::vec({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}));
      const CVector dc = oracle::vec({0, I * std::polar(std::sin(theta / 2), phi)});
      integral += connection_form(TangentVector(c, dc)).imag() * (2 * kPi / n);
    }
    CHECK_THAT(oracle::wrap(-integral), WithinAbs(oracle::wrap(oracle::latitude_phase(theta)), 1e-10));
    CHECK(std::abs(oracle::wrap(holonomy_rk4(LatitudeLoop(Direction(0, 0, 1), theta, 2000)) + integral)) <= 1e-9);
  }
}

TEST_CASE("transport error paths", "[connection]") {
  const Ray up = ray_of(StateVector::basis(2, 0)), down = ray_of(StateVector::basis(2, 1));
  const Ray plus = ray_from_bloch(Direction(1, 0, 0));
  CHECK_THROWS_AS(holonomy(BasePath{up, plus}), PathError);
  CHECK_THROWS_AS(parallel_transport(StateVector::basis(2, 1), BasePath{up, up}), PathError);
  CHECK_THROWS_AS(parallel_transport(StateVector::basis(2, 0), BasePath{up, down}), MeshError);
  CHECK_THROWS_AS(parallel_transport(StateVector::basis(2, 0), BasePath{}), PathError);
  CHECK_THROWS_AS(LatitudeLoop(Direction(0, 0, 1), -0.1, 10), std::invalid_argument);
  CHECK_THROWS_AS(LatitudeLoop(Direction(0, 0, 1), 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(parallel_transport_rk4(StateVector::basis(2, 1), LatitudeLoop(Direction(0, 0, 1), 1.0, 10).smooth(), 10),
                  PathError);
}

TEST_CASE("latitude loops are closed and oriented about their axis", "[connection]") {
  const Direction axis = Direction::normalized(2, -1, 0.5);
  const LatitudeLoop loop(axis, 1.0, 400);
  const BasePath s = loop.samples();
  CHECK(s.size() == 401);
  CHECK(projector_deviation(s.front(), s.back()) == 0.0);
  for (double t : {0.0, 0.25, 0.6}) CHECK_THAT(loop.point(t).dot(axis.vec()), WithinAbs(std::cos(1.0), 1e-14));
  // counterclockwise seen from +axis: (p(0) x p(t)) . axis > 0 for small t
  CHECK(loop.point(0.0).cross(loop.point(0.01)).dot(axis.vec()) > 0.0);
}
