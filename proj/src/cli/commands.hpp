#pragma once

// Subcommands of hopfc. Every command is a pure function of its parameter
// struct: the payload bytes depend only on the parameters (never on
// `workers` or the clock), and the manifest records what is needed to
// reproduce them.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hopf::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad arguments; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FibrationCheckParams {
  int n = 4;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
  bool pretty = true;
};

struct CollapseParams {
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  std::string format = "json";
  unsigned workers = 1;
  double tolerance = 1e-12;
  bool summary_only = false;
  bool pretty = true;
};

struct SweepParams {
  double theta_start = 0.0;
  double theta_stop = 3.141592653589793;
  int points = 13;
  /// Explicit grid; overrides start/stop/points when non-empty.
  std::vector<double> thetas;
  /// 0 = exact column only.
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string format = "csv";
  unsigned workers = 1;
  double tolerance = 1e-12;
  bool pretty = true;
};

struct ChshParams {
  /// a, a', b, b' in degrees from +z towards +x.
  std::array<double, 4> angles_deg{0.0, 90.0, 45.0, 135.0};
  /// 0 = exact only.
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool pretty = true;
};

struct HolonomyParams {
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double theta = 1.5707963267948966;
  int steps = 10000;
  /// discrete | rk4 | both
  std::string scheme = "both";
  double tolerance = 1e-6;
  bool pretty = true;
};

struct ChernParams {
  /// trivial | tautological | dual | power
  std::string bundle = "tautological";
  int power = 1;
  int mesh = 32;
  bool pretty = true;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FibrationCheckParams, n, trials, seed, tolerance, pretty)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(CollapseParams, axis, shots, seed, format, workers, tolerance,
                                                summary_only, pretty)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SweepParams, theta_start, theta_stop, points, thetas, shots, seed,
                                                format, workers, tolerance, pretty)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ChshParams, angles_deg, shots, seed, workers, pretty)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(HolonomyParams, axis, theta, steps, scheme, tolerance, pretty)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ChernParams, bundle, power, mesh, pretty)

struct CommandResult {
  int exit_code = kExitOk;
  /// Output file contents (JSON or CSV).
  std::string payload;
  /// command, parameters, seed, library_version, duration_seconds,
  /// output_checksum, format.
  json manifest;
  /// Human-readable notes for stderr (normalisation warnings, summaries).
  std::vector<std::string> messages;
};

CommandResult run_fibration_check(const FibrationCheckParams& p);
CommandResult run_collapse(const CollapseParams& p);
CommandResult run_correlation_sweep(const SweepParams& p);
CommandResult run_chsh(const ChshParams& p);
CommandResult run_holonomy(const HolonomyParams& p);
CommandResult run_chern(const ChernParams& p);

/// Dispatch by command name ("fibration-check", "collapse",
/// "correlation-sweep", "chsh", "holonomy", "chern") with parameters given
/// as JSON. Throws UsageError for an unknown command.
CommandResult run_command(const std::string& command, const json& parameters);

struct ReplayOutcome {
  bool reproduced;
  std::string expected_checksum;
  std::string actual_checksum;
  CommandResult result;
};

/// Re-runs the command a manifest describes. A nonzero `workers_override`
/// replaces the recorded worker count (outputs must not change).
ReplayOutcome replay(const json& manifest, unsigned workers_override = 0);

std::string library_version();

}  // namespace hopf::cli
