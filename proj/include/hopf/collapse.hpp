#pragma once

// Singlet preparation, projective spin measurement and the bookkeeping that
// ties each collapse event to the change of bundle S^7 -> CP^3 to
// S^3 -> CP^1.
//
// Two-spin vectors use the basis order (up up, up down, down up, down down).
// Measuring particle 2 of the singlet along n with result -1/2 leaves
// (n)_1 (x) (-n)_2; the effective state is particle 1's spinor, a point of
// S^3 over CP^1, and the particle-2 factor is kept in the record.

#include <array>
#include <cstdint>

#include "hopf/ray.hpp"

namespace hopf {

enum class SpinOutcome { Up, Down };

/// +1 for Up, -1 for Down.
constexpr int sign_of(SpinOutcome o) { return o == SpinOutcome::Up ? 1 : -1; }
/// Spin projection in units of hbar: +1/2 or -1/2.
constexpr double spin_value(SpinOutcome o) { return 0.5 * sign_of(o); }

enum class Particle { First = 1, Second = 2 };

struct MeasurementRecord {
  Direction axis;
  SpinOutcome outcome;
  /// Born probability of `outcome`.
  double probability;
  Particle measured;
  Ray pre_ray;
  StateVector post_product_state;
  /// Ray of the unmeasured particle's spinor, in CP^1.
  Ray post_effective_ray;
  /// post_effective_ray pushed into CP^3 by align_embedding.
  Ray embedded_post_ray;
};

struct BornProbabilities {
  double up;
  double down;
};

/// (up (x) down - down (x) up) / sqrt 2 = (0, 1/sqrt 2, -1/sqrt 2, 0).
StateVector singlet();

/// Exchanges the two tensor factors of a two-spin state.
StateVector swap_particles(const StateVector& state);

/// Second singular value of the 2x2 reshaping; zero iff the state is a
/// product.
double schmidt_residual(const StateVector& state);

/// p(+-1/2) = ||(1 (x) Pi_+-) state||^2 for particle 2 along axis.
BornProbabilities born_particle2(const StateVector& state, const Direction& axis);
BornProbabilities born_particle1(const StateVector& state, const Direction& axis);

/// Projects particle 2 onto the given branch. The post state is written as
/// phi (x) spinor_of(axis, sign) with phi gauge fixed. Throws
/// std::domain_error if the branch has (numerically) zero probability.
MeasurementRecord collapse_particle2(const StateVector& state, const Direction& axis, SpinOutcome branch);

/// Born-rule measurement of particle 2: Up iff draw < p(+1/2). Outcomes with
/// probability below 1e-15 are never selected. Throws NormalizationError for
/// a non-unit state and std::invalid_argument unless 0 <= draw < 1.
MeasurementRecord measure_particle2(const StateVector& state, const Direction& axis, double draw);

/// Same as measure_particle2 with the tensor factors exchanged.
MeasurementRecord measure_particle1(const StateVector& state, const Direction& axis, double draw);

/// Unitary W on C^4 with W (v1, v2, 0, 0) = v (x) spinor_of(axis, sign(branch)):
/// W = (1 (x) U(n)) (1 (x) X^[branch = Down]) SWAP, where U(n) has columns
/// spinor_of(n, +1), spinor_of(n, -1).
CMatrix alignment_unitary(const Direction& axis, SpinOutcome branch);

/// W include_ray(effective) W^dagger: the CP^1 of the branch, carrying the
/// measured particle's fixed spinor, placed inside CP^3.
Ray align_embedding(const Direction& axis, SpinOutcome branch, const Ray& effective);

/// Sum over the four outcome pairs of (+-1)(+-1) p(joint), particle 1 along
/// a and particle 2 along b.
double correlation_exact(const StateVector& state, const Direction& a, const Direction& b);
double correlation_exact(const Direction& a, const Direction& b);

struct ExperimentConfig {
  Direction axis_a;
  Direction axis_b;
  std::uint64_t shots;
  std::uint64_t seed;
  /// Independent random stream under the same seed.
  std::uint64_t stream = 0;
};

struct CorrelationEstimate {
  double mean;
  double std_error;
  std::uint64_t shots;
  /// Joint counts indexed [particle-1 up?0:1][particle-2 up?0:1].
  std::array<std::array<std::uint64_t, 2>, 2> counts;
};

/// Monte Carlo estimate: each shot measures particle 2 along b, then
/// particle 1 of the collapsed state along a, drawing CounterRng(seed,
/// stream) uniforms 2i and 2i+1 for shot i. Results are independent of
/// `workers`. Throws std::invalid_argument if shots == 0.
CorrelationEstimate correlation_mc(const ExperimentConfig& config, unsigned workers = 1,
                                   const StateVector& state = singlet());

/// Unit vector at `angle` radians from +z towards +x.
Direction coplanar_direction(double angle);

struct ChshSettings {
  Direction a;
  Direction a_prime;
  Direction b;
  Direction b_prime;

  /// a = 0, a' = 90, b = 45, b' = 135 degrees in the x-z plane.
  static ChshSettings optimal();
};

/// |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|.
double chsh_combination(double ab, double ab_prime, double a_prime_b, double a_prime_b_prime);
double chsh_exact(const ChshSettings& settings);

struct ChshEstimate {
  double s;
  double std_error;
  /// E(a,b), E(a,b'), E(a',b), E(a',b'); streams 0..3.
  std::array<CorrelationEstimate, 4> terms;
};

ChshEstimate chsh_mc(const ChshSettings& settings, std::uint64_t shots, std::uint64_t seed, unsigned workers = 1);

struct TransitionReport {
  SpinOutcome outcome;
  Ray pre_ray;
  Ray post_effective_ray;
  Ray embedded_post_ray;
  /// hopf_project(post_product_state).
  Ray post_ray;
  /// Fubini-Study distance from pre_ray to post_ray.
  double jump_distance;
  double commute_deviation;
  bool diagram_commutes;
};

/// Throws ConsistencyError if the record's dimensions are wrong, its post
/// state is not a product, its probability lies outside [0, 1], or its
/// embedded ray is not the aligned embedding of its effective ray.
TransitionReport collapse_transition(const MeasurementRecord& record, double tol = kDefaultTolerance);

}  // namespace hopf
