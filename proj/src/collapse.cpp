#include "hopf/collapse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hopf/errors.hpp"
#include "hopf/fibration.hpp"
#include "hopf/rng.hpp"

namespace hopf {

namespace {

constexpr double kNegligibleProbability = 1e-15;

void require_two_spins(const StateVector& state, const char* who) {
  if (state.dim() != 4) throw DimensionError(std::string(who) + ": expected a two-spin state in C^4");
}

CMatrix swap_matrix() {
  CMatrix s = CMatrix::Zero(4, 4);
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

// Particle-1 amplitude left after projecting particle 2 onto chi:
// phi_i = sum_j conj(chi_j) psi_{2i+j}.
CVector contract_particle2(const StateVector& state, const StateVector& chi) {
  const CVector& psi = state.components();
  CVector phi(2);
  for (int i = 0; i < 2; ++i) phi[i] = std::conj(chi[0]) * psi[2 * i] + std::conj(chi[1]) * psi[2 * i + 1];
  return phi;
}

Ray swap_conjugate(const Ray& r) {
  const CMatrix s = swap_matrix();
  return trusted_ray(s * r.projector() * s);
}

}  // namespace

StateVector singlet() {
  const double h = 1.0 / std::numbers::sqrt2;
  CVector v(4);
  v << 0.0, h, -h, 0.0;
  return trusted_state(std::move(v));
}

StateVector swap_particles(const StateVector& state) {
  require_two_spins(state, "swap_particles");
  CVector v = state.components();
  std::swap(v[1], v[2]);
  return trusted_state(std::move(v));
}

double schmidt_residual(const StateVector& state) {
  require_two_spins(state, "schmidt_residual");
  Eigen::Matrix2cd m;
  m << state[0], state[1], state[2], state[3];
  return Eigen::JacobiSVD<Eigen::Matrix2cd>(m).singularValues()[1];
}

BornProbabilities born_particle2(const StateVector& state, const Direction& axis) {
  require_two_spins(state, "born_particle2");
  return {contract_particle2(state, spinor_of(axis, +1)).squaredNorm(),
          contract_particle2(state, spinor_of(axis, -1)).squaredNorm()};
}

BornProbabilities born_particle1(const StateVector& state, const Direction& axis) {
  return born_particle2(swap_particles(state), axis);
}

MeasurementRecord collapse_particle2(const StateVector& state, const Direction& axis, SpinOutcome branch) {
  require_two_spins(state, "collapse_particle2");
  const StateVector chi = spinor_of(axis, sign_of(branch));
  // (1 (x) |chi><chi|) psi = phi (x) chi
  const CVector phi = contract_particle2(state, chi);
  const double p = phi.squaredNorm();
  if (!(p > kNegligibleProbability)) throw std::domain_error("collapse_particle2: branch has zero probability");
  const StateVector effective = trusted_state(gauge_fixed(phi / std::sqrt(p)));
  const Ray effective_ray = ray_of(effective);
  return MeasurementRecord{axis,
                           branch,
                           std::min(p, 1.0),
                           Particle::Second,
                           ray_of(state),
                           tensor_product(effective, chi),
                           effective_ray,
                           align_embedding(axis, branch, effective_ray)};
}

MeasurementRecord measure_particle2(const StateVector& state, const Direction& axis, double draw) {
  if (!(draw >= 0.0 && draw < 1.0)) throw std::invalid_argument("measure_particle2: draw must lie in [0, 1)");
  if (std::abs(state.components().norm() - 1.0) > kDefaultTolerance)
    throw NormalizationError("measure_particle2: state is not unit-norm");
  const BornProbabilities p = born_particle2(state, axis);
  SpinOutcome outcome = draw < p.up ? SpinOutcome::Up : SpinOutcome::Down;
  if (outcome == SpinOutcome::Up && p.up <= kNegligibleProbability) outcome = SpinOutcome::Down;
  if (outcome == SpinOutcome::Down && p.down <= kNegligibleProbability) outcome = SpinOutcome::Up;
  return collapse_particle2(state, axis, outcome);
}

MeasurementRecord measure_particle1(const StateVector& state, const Direction& axis, double draw) {
  MeasurementRecord r = measure_particle2(swap_particles(state), axis, draw);
  r.measured = Particle::First;
  r.pre_ray = ray_of(state);
  r.post_product_state = swap_particles(r.post_product_state);
  r.embedded_post_ray = swap_conjugate(r.embedded_post_ray);
  return r;
}

CMatrix alignment_unitary(const Direction& axis, SpinOutcome branch) {
  CMatrix u(2, 2);
  u.col(0) = spinor_of(axis, +1).components();
  u.col(1) = spinor_of(axis, -1).components();
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix flip = branch == SpinOutcome::Down ? pauli_x() : id;
  return kron(id, u) * kron(id, flip) * swap_matrix();
}

Ray align_embedding(const Direction& axis, SpinOutcome branch, const Ray& effective) {
  if (effective.dim() != 2) throw DimensionError("align_embedding: effective ray must lie in CP^1");
  const CMatrix w = alignment_unitary(axis, branch);
  return trusted_ray(w * include_ray(effective, 4).projector() * w.adjoint());
}

double correlation_exact(const StateVector& state, const Direction& a, const Direction& b) {
  require_two_spins(state, "correlation_exact");
  double e = 0.0;
  for (int s : {+1, -1}) {
    for (int t : {+1, -1}) {
      const CVector joint = kron(spinor_of(a, s).components(), spinor_of(b, t).components());
      e += s * t * std::norm(hermitian_inner(joint, state.components()));
    }
  }
  return e;
}

double correlation_exact(const Direction& a, const Direction& b) { return correlation_exact(singlet(), a, b); }

CorrelationEstimate correlation_mc(const ExperimentConfig& config, unsigned workers, const StateVector& state) {
  if (config.shots == 0) throw std::invalid_argument("correlation_mc: shots must be positive");
  require_two_spins(state, "correlation_mc");
  workers = std::max(1u, workers);

  // Particle 2 along b has two possible collapses; tabulate the particle-1
  // Born probability along a after each so a shot is just two draws.
  const BornProbabilities p2 = born_particle2(state, config.axis_b);
  std::array<double, 2> p1_up{0.0, 0.0};
  for (SpinOutcome t : {SpinOutcome::Up, SpinOutcome::Down}) {
    const double pt = t == SpinOutcome::Up ? p2.up : p2.down;
    if (pt > kNegligibleProbability)
      p1_up[t == SpinOutcome::Up ? 0 : 1] =
          born_particle1(collapse_particle2(state, config.axis_b, t).post_product_state, config.axis_a).up;
  }
  const double threshold2 = p2.down <= kNegligibleProbability ? 2.0 : (p2.up <= kNegligibleProbability ? -1.0 : p2.up);

  const CounterRng rng(config.seed, config.stream);
  using Counts = std::array<std::array<std::uint64_t, 2>, 2>;
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    Counts c{};
    for (std::uint64_t i = begin; i < end; ++i) {
      const int t = rng.uniform(2 * i) < threshold2 ? 0 : 1;
      const int s = rng.uniform(2 * i + 1) < p1_up[t] ? 0 : 1;
      ++c[s][t];
    }
    return c;
  };

  Counts counts{};
  if (workers == 1 || config.shots < 2 * workers) {
    counts = run(0, config.shots);
  } else {
    std::vector<Counts> partial(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (config.shots + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(config.shots, w * chunk);
      const std::uint64_t end = std::min(config.shots, begin + chunk);
      pool.emplace_back([&, w, begin, end] { partial[w] = run(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (const Counts& c : partial)
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) counts[s][t] += c[s][t];
  }

  const auto same = static_cast<double>(counts[0][0] + counts[1][1]);
  const auto differ = static_cast<double>(counts[0][1] + counts[1][0]);
  const double n = static_cast<double>(config.shots);
  const double mean = (same - differ) / n;
  return CorrelationEstimate{mean, std::sqrt(std::max(0.0, 1.0 - mean * mean) / n), config.shots, counts};
}

Direction coplanar_direction(double angle) { return Direction::normalized(std::sin(angle), 0.0, std::cos(angle)); }

ChshSettings ChshSettings::optimal() {
  constexpr double deg = std::numbers::pi / 180.0;
  return {coplanar_direction(0.0), coplanar_direction(90 * deg), coplanar_direction(45 * deg),
          coplanar_direction(135 * deg)};
}

double chsh_combination(double ab, double ab_prime, double a_prime_b, double a_prime_b_prime) {
  return std::abs(ab - ab_prime) + std::abs(a_prime_b + a_prime_b_prime);
}

double chsh_exact(const ChshSettings& s) {
  return chsh_combination(correlation_exact(s.a, s.b), correlation_exact(s.a, s.b_prime),
                          correlation_exact(s.a_prime, s.b), correlation_exact(s.a_prime, s.b_prime));
}

ChshEstimate chsh_mc(const ChshSettings& s, std::uint64_t shots, std::uint64_t seed, unsigned workers) {
  const std::array<std::pair<const Direction*, const Direction*>, 4> pairs{
      {{&s.a, &s.b}, {&s.a, &s.b_prime}, {&s.a_prime, &s.b}, {&s.a_prime, &s.b_prime}}};
  std::array<CorrelationEstimate, 4> terms{};
  double var = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    terms[k] = correlation_mc(ExperimentConfig{*pairs[k].first, *pairs[k].second, shots, seed, k}, workers);
    var += terms[k].std_error * terms[k].std_error;
  }
  return ChshEstimate{chsh_combination(terms[0].mean, terms[1].mean, terms[2].mean, terms[3].mean), std::sqrt(var),
                      terms};
}

TransitionReport collapse_transition(const MeasurementRecord& r, double tol) {
  if (r.pre_ray.dim() != 4 || r.post_product_state.dim() != 4 || r.post_effective_ray.dim() != 2 ||
      r.embedded_post_ray.dim() != 4)
    throw ConsistencyError("collapse_transition: record has the wrong dimensions");
  if (!(r.probability >= 0.0 && r.probability <= 1.0))
    throw ConsistencyError("collapse_transition: probability outside [0, 1]");
  if (!(schmidt_residual(r.post_product_state) <= tol))
    throw ConsistencyError("collapse_transition: post-measurement state is entangled");
  Ray expected = align_embedding(r.axis, r.outcome, r.post_effective_ray);
  if (r.measured == Particle::First) expected = swap_conjugate(expected);
  if (!(projector_deviation(expected, r.embedded_post_ray) <= tol))
    throw ConsistencyError("collapse_transition: embedded ray is not the aligned embedding of the effective ray");

  Ray post = hopf_project(r.post_product_state);
  const double dev = projector_deviation(r.embedded_post_ray, post);
  const double jump = fubini_study_distance(r.pre_ray, post);
  return TransitionReport{r.outcome, r.pre_ray, r.post_effective_ray, r.embedded_post_ray, std::move(post),
                          jump,      dev,       dev <= tol};
}

}  // namespace hopf
