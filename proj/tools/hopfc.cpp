// hopfc: command-line front end for the hopf library.
//
// Exit codes: 0 success, 1 property or statistical failure, 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "hopf/errors.hpp"

namespace {

using hopf::cli::CommandResult;
using hopf::cli::json;

struct OutputOptions {
  std::string out;
  std::string manifest;
  bool compact = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out, "Write the report to FILE (manifest goes to FILE.manifest.json)");
  cmd->add_option("--manifest", o.manifest, "Write the run manifest to this path");
  cmd->add_flag("--compact", o.compact, "Compact JSON instead of pretty-printed");
}

void add_seed(CLI::App* cmd, std::uint64_t& seed) {
  cmd->add_option("--seed", seed, "RNG seed")->envname("HOPFC_SEED");
}

void add_workers(CLI::App* cmd, unsigned& workers) {
  cmd->add_option("--workers", workers, "Monte Carlo worker threads (results do not depend on it)")
      ->envname("HOPFC_WORKERS")
      ->check(CLI::Range(1u, 1024u));
}

bool write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  f << data;
  return static_cast<bool>(f);
}

int emit(const CommandResult& r, const OutputOptions& o) {
  for (const auto& m : r.messages) std::cerr << m << '\n';
  if (o.out.empty()) {
    std::cout << r.payload;
  } else if (!write_file(o.out, r.payload)) {
    std::cerr << "error: cannot write " << o.out << '\n';
    return hopf::cli::kExitUsage;
  }
  std::string manifest_path = o.manifest;
  if (manifest_path.empty() && !o.out.empty()) manifest_path = o.out + ".manifest.json";
  if (!manifest_path.empty() && !write_file(manifest_path, r.manifest.dump(2) + "\n")) {
    std::cerr << "error: cannot write " << manifest_path << '\n';
    return hopf::cli::kExitUsage;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf bundles, collapse of the spin singlet, connection holonomy and Chern numbers"};
  app.set_version_flag("--version", hopf::cli::library_version());
  app.require_subcommand(1);

  OutputOptions out;

  hopf::cli::FibrationCheckParams fib;
  auto* c_fib = app.add_subcommand("fibration-check", "Fibration invariance and collapse-square commutativity");
  c_fib->add_option("--n", fib.n, "C^n of the bundle S^{2n-1} -> CP^{n-1}")->check(CLI::IsMember({2, 4}));
  c_fib->add_option("--trials", fib.trials, "Random samples")->check(CLI::PositiveNumber);
  c_fib->add_option("--tolerance", fib.tolerance, "Pass threshold")->envname("HOPFC_TOLERANCE");
  add_seed(c_fib, fib.seed);

  hopf::cli::CollapseParams col;
  auto* c_col = app.add_subcommand("collapse", "Measure particle 2 of the singlet and record each collapse");
  c_col->add_option("--axis", col.axis, "Measurement axis x y z (normalised if needed)");
  c_col->add_option("--shots", col.shots, "Number of measurements")->envname("HOPFC_SHOTS");
  c_col->add_option("--format", col.format, "json or csv")->envname("HOPFC_FORMAT")->check(CLI::IsMember({"json", "csv"}));
  c_col->add_option("--tolerance", col.tolerance, "Diagram commutativity threshold")->envname("HOPFC_TOLERANCE");
  c_col->add_flag("--summary-only", col.summary_only, "Omit per-shot records");
  add_seed(c_col, col.seed);
  add_workers(c_col, col.workers);

  hopf::cli::SweepParams sw;
  auto* c_sw = app.add_subcommand("correlation-sweep", "Singlet correlation E(z, b(theta)) over an angle grid");
  c_sw->add_option("--theta-start", sw.theta_start, "First angle (radians)");
  c_sw->add_option("--theta-stop", sw.theta_stop, "Last angle (radians)");
  c_sw->add_option("--points", sw.points, "Grid points");
  c_sw->add_option("--thetas", sw.thetas, "Explicit angle list (radians)");
  c_sw->add_option("--shots", sw.shots, "Monte Carlo shots per angle; 0 for exact only")->envname("HOPFC_SHOTS");
  c_sw->add_option("--format", sw.format, "csv or json")->envname("HOPFC_FORMAT")->check(CLI::IsMember({"csv", "json"}));
  c_sw->add_option("--tolerance", sw.tolerance, "Exact-column check threshold")->envname("HOPFC_TOLERANCE");
  add_seed(c_sw, sw.seed);
  add_workers(c_sw, sw.workers);

  hopf::cli::ChshParams ch;
  auto* c_ch = app.add_subcommand("chsh", "CHSH combination for four coplanar analyser angles");
  c_ch->add_option("--angles", ch.angles_deg, "a a' b b' in degrees from +z towards +x");
  c_ch->add_option("--shots", ch.shots, "Monte Carlo shots per setting; 0 for exact only")->envname("HOPFC_SHOTS");
  add_seed(c_ch, ch.seed);
  add_workers(c_ch, ch.workers);

  hopf::cli::HolonomyParams ho;
  auto* c_ho = app.add_subcommand("holonomy", "Holonomy of a latitude loop on CP^1");
  c_ho->add_option("--axis", ho.axis, "Loop axis x y z");
  c_ho->add_option("--theta", ho.theta, "Polar angle of the loop (radians)");
  c_ho->add_option("--steps", ho.steps, "Path samples");
  c_ho->add_option("--scheme", ho.scheme, "discrete, rk4 or both")->check(CLI::IsMember({"discrete", "rk4", "both"}));
  c_ho->add_option("--tolerance", ho.tolerance, "Pass threshold against the solid-angle phase")
      ->envname("HOPFC_TOLERANCE");

  hopf::cli::ChernParams cn;
  auto* c_cn = app.add_subcommand("chern", "Lattice first Chern number of a line bundle over CP^1");
  c_cn->add_option("--bundle", cn.bundle, "trivial, tautological, dual or power")
      ->check(CLI::IsMember({"trivial", "tautological", "dual", "power"}));
  c_cn->add_option("--power", cn.power, "Tensor power (negative: dual)");
  c_cn->add_option("--mesh", cn.mesh, "Sphere mesh size M");

  std::string replay_path;
  unsigned replay_workers = 0;
  auto* c_re = app.add_subcommand("replay", "Re-run a manifest and compare output checksums");
  c_re->add_option("manifest", replay_path, "Manifest file")->required()->check(CLI::ExistingFile);
  c_re->add_option("--workers", replay_workers, "Override the recorded worker count");

  for (auto* c : {c_fib, c_col, c_sw, c_ch, c_ho, c_cn}) add_output_options(c, out);
  c_re->add_option("--out", out.out, "Write the replayed output to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hopf::cli::kExitUsage;
  }

  try {
    for (auto* c : {c_fib, c_col, c_sw, c_ch, c_ho, c_cn}) {
      if (!c->parsed()) continue;
      json params;
      if (c == c_fib) params = fib;
      if (c == c_col) params = col;
      if (c == c_sw) params = sw;
      if (c == c_ch) params = ch;
      if (c == c_ho) params = ho;
      if (c == c_cn) params = cn;
      params["pretty"] = !out.compact;
      return emit(hopf::cli::run_command(c->get_name(), params), out);
    }
    if (c_re->parsed()) {
      std::ifstream f(replay_path);
      const json manifest = json::parse(f);
      const auto outcome = hopf::cli::replay(manifest, replay_workers);
      std::cerr << (outcome.reproduced ? "reproduced " : "MISMATCH ") << outcome.actual_checksum
                << " (expected " << outcome.expected_checksum << ")\n";
      if (!out.out.empty()) emit(outcome.result, out);
      return outcome.reproduced ? hopf::cli::kExitOk : hopf::cli::kExitFailure;
    }
  } catch (const hopf::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return hopf::cli::kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return hopf::cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return hopf::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hopf::cli::kExitFailure;
  }
  return hopf::cli::kExitUsage;
}
