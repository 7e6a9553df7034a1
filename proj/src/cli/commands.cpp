#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "cli/serialize.hpp"
#include "hopf/hopf.hpp"

namespace hopf::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSchemaVersion = 1;
// Monte Carlo consistency checks flag deviations beyond this many standard errors.
constexpr double kSigmaBound = 5.0;

using Clock = std::chrono::steady_clock;

std::string dump(const json& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

json report_header(const std::string& command) {
  return json{{"command", command}, {"schema_version", kSchemaVersion}};
}

CommandResult finish(const std::string& command, json parameters, std::uint64_t seed, std::string payload,
                     std::string format, Clock::time_point started, int exit_code,
                     std::vector<std::string> messages = {}) {
  CommandResult r;
  r.exit_code = exit_code;
  r.manifest = json{{"manifest_version", kSchemaVersion},
                    {"command", command},
                    {"parameters", std::move(parameters)},
                    {"seed", seed},
                    {"library_version", library_version()},
                    {"duration_seconds", std::chrono::duration<double>(Clock::now() - started).count()},
                    {"output_checksum", checksum(payload)},
                    {"format", std::move(format)}};
  r.payload = std::move(payload);
  r.messages = std::move(messages);
  return r;
}

Direction axis_from(const std::array<double, 3>& a, std::vector<std::string>& messages) {
  const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (!(n > 0.0) || !std::isfinite(n)) throw UsageError("axis must be a nonzero finite vector");
  if (std::abs(n * n - 1.0) > kDefaultTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "warning: axis has norm " << n << "; normalised";
    messages.push_back(os.str());
  }
  return Direction::normalized(a[0], a[1], a[2]);
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw UsageError("unsupported format '" + f + "'");
}

// Runs body(i) for i in [0, count) on up to `workers` threads, contiguous blocks.
template <class Body>
void parallel_for(std::uint64_t count, unsigned workers, Body body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2 * static_cast<std::uint64_t>(workers)) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(count, w * chunk);
    const std::uint64_t end = std::min(count, begin + chunk);
    pool.emplace_back([begin, end, &body] {
      for (std::uint64_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::string library_version() { return HOPF_VERSION; }

CommandResult run_fibration_check(const FibrationCheckParams& p) {
  const auto started = Clock::now();
  if (p.n != 2 && p.n != 4) throw UsageError("--n must be 2 or 4");
  if (p.trials == 0) throw UsageError("--trials must be positive");

  const CounterRng states(p.seed, 0), phases(p.seed, 1), axes(p.seed, 2), draws(p.seed, 3), lows(p.seed, 4);
  double fibration = 0.0, inclusion = 0.0, collapse = 0.0;
  for (std::uint64_t i = 0; i < p.trials; ++i) {
    const StateVector z = random_state(states, i, p.n);
    const double rho = random_phase(phases, i);
    fibration = std::max(fibration, projector_deviation(hopf_project(z.with_phase(rho)), hopf_project(z)));

    const StateVector w = random_state(lows, i, 2);
    inclusion = std::max(inclusion, projector_deviation(include_ray(hopf_project(w)), hopf_project(include_sphere(w))));

    if (p.n == 4) {
      const MeasurementRecord rec = measure_particle2(singlet(), random_direction(axes, i), draws.uniform(i));
      collapse = std::max(collapse, collapse_transition(rec).commute_deviation);
    }
  }

  const bool pass = fibration <= p.tolerance && inclusion <= p.tolerance && collapse <= p.tolerance;
  json report = report_header("fibration-check");
  report["n"] = p.n;
  report["trials"] = p.trials;
  report["seed"] = p.seed;
  report["tolerance"] = p.tolerance;
  report["max_fibration_deviation"] = fibration;
  report["max_inclusion_deviation"] = inclusion;
  report["max_collapse_deviation"] = p.n == 4 ? json(collapse) : json(nullptr);
  report["max_deviation"] = std::max({fibration, inclusion, collapse});
  report["pass"] = pass;
  return finish("fibration-check", p, p.seed, dump(report, p.pretty), "json", started,
                pass ? kExitOk : kExitFailure);
}

CommandResult run_collapse(const CollapseParams& p) {
  const auto started = Clock::now();
  std::vector<std::string> messages;
  check_format(p.format, {"json", "csv"});
  if (p.shots == 0) throw UsageError("--shots must be positive");
  const Direction axis = axis_from(p.axis, messages);

  struct Row {
    SpinOutcome outcome;
    double probability;
    CVector representative;
    Eigen::Vector3d bloch;
    double jump;
    bool commutes;
  };
  const StateVector psi = singlet();
  const CounterRng rng(p.seed, 0);
  std::vector<Row> rows(p.shots);
  parallel_for(p.shots, p.workers, [&](std::uint64_t i) {
    const MeasurementRecord rec = measure_particle2(psi, axis, rng.uniform(i));
    const TransitionReport t = collapse_transition(rec);
    rows[i] = Row{rec.outcome,
                  rec.probability,
                  rec.post_effective_ray.representative().components(),
                  bloch_point(rec.post_effective_ray).vec(),
                  t.jump_distance,
                  t.commute_deviation <= p.tolerance};
  });

  std::uint64_t up = 0;
  double jump_sum = 0.0;
  bool all_commute = true;
  for (const Row& r : rows) {
    up += r.outcome == SpinOutcome::Up;
    jump_sum += r.jump;
    all_commute = all_commute && r.commutes;
  }
  const std::uint64_t down = p.shots - up;
  const BornProbabilities born = born_particle2(psi, axis);
  const double n = static_cast<double>(p.shots);
  const double sigma = std::sqrt(n * born.up * born.down);
  const double z = sigma > 0 ? (static_cast<double>(down) - n * born.down) / sigma : 0.0;
  const bool statistics_ok = std::abs(z) <= kSigmaBound;

  json summary{{"shots", p.shots},
               {"count_up", up},
               {"count_down", down},
               {"freq_up", static_cast<double>(up) / n},
               {"freq_down", static_cast<double>(down) / n},
               {"p_up_exact", born.up},
               {"p_down_exact", born.down},
               {"binomial_z", z},
               {"mean_jump_distance", jump_sum / n},
               {"all_diagrams_commute", all_commute}};

  std::string payload;
  if (p.format == "json") {
    json report = report_header("collapse");
    report["axis"] = direction_json(axis);
    report["seed"] = p.seed;
    report["rng"] = "splitmix64-counter";
    json records = json::array();
    if (!p.summary_only) {
      for (std::uint64_t i = 0; i < p.shots; ++i) {
        const Row& r = rows[i];
        records.push_back(json{{"shot", i},
                               {"outcome", spin_value(r.outcome)},
                               {"probability", r.probability},
                               {"branch_ray", {{"representative", vector_json(r.representative)},
                                               {"bloch", vec3_json(r.bloch)}}},
                               {"jump_distance", r.jump},
                               {"diagram_commutes", r.commutes}});
      }
    }
    report["records"] = std::move(records);
    report["summary"] = summary;
    payload = dump(report, p.pretty);
  } else {
    std::ostringstream os;
    os << "shot,outcome,probability,bloch_x,bloch_y,bloch_z,jump_distance,diagram_commutes\n";
    if (!p.summary_only) {
      for (std::uint64_t i = 0; i < p.shots; ++i) {
        const Row& r = rows[i];
        os << i << ',' << format_double(spin_value(r.outcome)) << ',' << format_double(r.probability) << ','
           << format_double(r.bloch.x()) << ',' << format_double(r.bloch.y()) << ',' << format_double(r.bloch.z())
           << ',' << format_double(r.jump) << ',' << (r.commutes ? "true" : "false") << '\n';
      }
    }
    payload = os.str();
    messages.push_back("summary: " + summary.dump());
  }
  return finish("collapse", p, p.seed, std::move(payload), p.format, started,
                all_commute && statistics_ok ? kExitOk : kExitFailure, std::move(messages));
}

CommandResult run_correlation_sweep(const SweepParams& p) {
  const auto started = Clock::now();
  check_format(p.format, {"csv", "json"});
  std::vector<double> grid = p.thetas;
  if (grid.empty()) {
    if (p.points <= 0) throw UsageError("angle grid is empty");
    for (int i = 0; i < p.points; ++i)
      grid.push_back(p.points == 1 ? p.theta_start
                                   : p.theta_start + (p.theta_stop - p.theta_start) * i / (p.points - 1));
  }

  const Direction a(0.0, 0.0, 1.0);
  bool ok = true;
  std::ostringstream csv;
  csv << "theta_rad,E_exact,E_mc,mc_stderr\n";
  json rows = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double theta = grid[i];
    const Direction b = coplanar_direction(theta);
    const double exact = correlation_exact(a, b);
    ok = ok && std::abs(exact + std::cos(theta)) <= p.tolerance;
    json row{{"theta_rad", theta}, {"E_exact", exact}, {"E_mc", nullptr}, {"mc_stderr", nullptr}};
    csv << format_double(theta) << ',' << format_double(exact) << ',';
    if (p.shots > 0) {
      const CorrelationEstimate mc = correlation_mc(ExperimentConfig{a, b, p.shots, p.seed, i}, p.workers);
      const double n = static_cast<double>(p.shots);
      const double bound = kSigmaBound * std::sqrt(std::max(0.0, 1.0 - exact * exact) / n) + 1e-12;
      ok = ok && std::abs(mc.mean - exact) <= bound;
      row["E_mc"] = mc.mean;
      row["mc_stderr"] = mc.std_error;
      csv << format_double(mc.mean) << ',' << format_double(mc.std_error);
    } else {
      csv << ',';
    }
    csv << '\n';
    rows.push_back(std::move(row));
  }

  std::string payload;
  if (p.format == "csv") {
    payload = csv.str();
  } else {
    json report = report_header("correlation-sweep");
    report["seed"] = p.seed;
    report["shots"] = p.shots;
    report["rows"] = std::move(rows);
    report["pass"] = ok;
    payload = dump(report, p.pretty);
  }
  return finish("correlation-sweep", p, p.seed, std::move(payload), p.format, started, ok ? kExitOk : kExitFailure);
}

CommandResult run_chsh(const ChshParams& p) {
  const auto started = Clock::now();
  constexpr double deg = kPi / 180.0;
  const ChshSettings s{coplanar_direction(p.angles_deg[0] * deg), coplanar_direction(p.angles_deg[1] * deg),
                       coplanar_direction(p.angles_deg[2] * deg), coplanar_direction(p.angles_deg[3] * deg)};
  const std::array<double, 4> exact{correlation_exact(s.a, s.b), correlation_exact(s.a, s.b_prime),
                                    correlation_exact(s.a_prime, s.b), correlation_exact(s.a_prime, s.b_prime)};
  const double s_exact = chsh_combination(exact[0], exact[1], exact[2], exact[3]);

  json report = report_header("chsh");
  report["angles_deg"] = p.angles_deg;
  report["seed"] = p.seed;
  report["exact"] = {{"S", s_exact}, {"terms", exact}};
  report["classical_bound"] = 2.0;
  report["tsirelson_bound"] = 2.0 * std::numbers::sqrt2;
  double s_reported = s_exact;
  bool ok = true;
  if (p.shots > 0) {
    const ChshEstimate mc = chsh_mc(s, p.shots, p.seed, p.workers);
    json terms = json::array();
    for (const auto& t : mc.terms) terms.push_back({{"mean", t.mean}, {"std_error", t.std_error}});
    report["monte_carlo"] = {{"shots", p.shots}, {"S", mc.s}, {"std_error", mc.std_error}, {"terms", terms}};
    s_reported = mc.s;
    ok = std::abs(mc.s - s_exact) <= kSigmaBound * mc.std_error + 1e-12;
  } else {
    report["monte_carlo"] = nullptr;
  }
  report["S"] = s_reported;
  report["violates_classical_bound"] = s_reported > 2.0;
  return finish("chsh", p, p.seed, dump(report, p.pretty), "json", started, ok ? kExitOk : kExitFailure);
}

CommandResult run_holonomy(const HolonomyParams& p) {
  const auto started = Clock::now();
  std::vector<std::string> messages;
  const Direction axis = axis_from(p.axis, messages);
  if (!(p.theta >= 0.0 && p.theta <= kPi)) throw UsageError("--theta must lie in [0, pi]");
  if (p.steps < 1) throw UsageError("--steps must be positive");
  if (p.scheme != "discrete" && p.scheme != "rk4" && p.scheme != "both")
    throw UsageError("--scheme must be discrete, rk4 or both");

  const LatitudeLoop loop(axis, p.theta, p.steps);
  const double expected = loop.expected_holonomy();
  json report = report_header("holonomy");
  report["axis"] = direction_json(axis);
  report["theta"] = p.theta;
  report["steps"] = p.steps;
  report["scheme"] = p.scheme;
  report["solid_angle"] = loop.solid_angle();
  report["orientation_sign"] = kHolonomyOrientationSign;
  report["expected_phase"] = expected;
  report["discrete_phase"] = nullptr;
  report["discrete_deviation"] = nullptr;
  report["rk4_phase"] = nullptr;
  report["rk4_deviation"] = nullptr;
  bool ok = true;
  if (p.scheme != "rk4") {
    const double phase = holonomy(loop);
    const double dev = std::abs(wrap_phase(phase - expected));
    report["discrete_phase"] = phase;
    report["discrete_deviation"] = dev;
    ok = ok && dev <= p.tolerance;
  }
  if (p.scheme != "discrete") {
    const double phase = holonomy_rk4(loop);
    const double dev = std::abs(wrap_phase(phase - expected));
    report["rk4_phase"] = phase;
    report["rk4_deviation"] = dev;
    ok = ok && dev <= p.tolerance;
  }
  report["tolerance"] = p.tolerance;
  report["pass"] = ok;
  return finish("holonomy", p, 0, dump(report, p.pretty), "json", started, ok ? kExitOk : kExitFailure,
                std::move(messages));
}

CommandResult run_chern(const ChernParams& p) {
  const auto started = Clock::now();
  if (p.mesh < kMinChernMesh) throw UsageError("--mesh must be >= 8");
  LineBundleModel model = LineBundleModel::trivial();
  int expected = 0;
  if (p.bundle == "trivial") {
    expected = 0;
  } else if (p.bundle == "tautological" || p.bundle == "power") {
    model = LineBundleModel::tautological_power(p.power);
    expected = -p.power;
  } else if (p.bundle == "dual") {
    model = LineBundleModel::tautological_power(-p.power);
    expected = p.power;
  } else {
    throw UsageError("--bundle must be trivial, tautological, dual or power");
  }
  const ChernResult r = chern_lattice(model, p.mesh);
  json report = report_header("chern");
  report["bundle"] = p.bundle;
  report["power"] = p.power;
  report["mesh"] = p.mesh;
  report["chern"] = r.chern;
  report["raw"] = r.raw;
  report["max_plaquette_phase"] = r.max_plaquette_phase;
  report["plaquettes"] = r.plaquettes;
  report["expected"] = expected;
  report["pass"] = r.chern == expected;
  return finish("chern", p, 0, dump(report, p.pretty), "json", started,
                r.chern == expected ? kExitOk : kExitFailure);
}

CommandResult run_command(const std::string& command, const json& parameters) {
  try {
    if (command == "fibration-check") return run_fibration_check(parameters.get<FibrationCheckParams>());
    if (command == "collapse") return run_collapse(parameters.get<CollapseParams>());
    if (command == "correlation-sweep") return run_correlation_sweep(parameters.get<SweepParams>());
    if (command == "chsh") return run_chsh(parameters.get<ChshParams>());
    if (command == "holonomy") return run_holonomy(parameters.get<HolonomyParams>());
    if (command == "chern") return run_chern(parameters.get<ChernParams>());
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad parameters: ") + e.what());
  }
  throw UsageError("unknown command '" + command + "'");
}

ReplayOutcome replay(const json& manifest, unsigned workers_override) {
  if (!manifest.contains("command") || !manifest.contains("parameters") || !manifest.contains("output_checksum"))
    throw UsageError("manifest lacks command, parameters or output_checksum");
  json params = manifest.at("parameters");
  if (workers_override > 0 && params.contains("workers")) params["workers"] = workers_override;
  CommandResult r = run_command(manifest.at("command").get<std::string>(), params);
  const std::string expected = manifest.at("output_checksum").get<std::string>();
  const std::string actual = r.manifest.at("output_checksum").get<std::string>();
  return ReplayOutcome{expected == actual, expected, actual, std::move(r)};
}

}  // namespace hopf::cli
