#include <numbers>
#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli/commands.hpp"
#include "hopf/hopf.hpp"

namespace py = pybind11;
using namespace hopf;

namespace {

Direction direction(const Eigen::Vector3d& v) { return Direction(v.x(), v.y(), v.z()); }

SpinOutcome outcome_of(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("branch sign must be +1 or -1");
  return sign > 0 ? SpinOutcome::Up : SpinOutcome::Down;
}

py::dict record_dict(const MeasurementRecord& r) {
  const TransitionReport t = collapse_transition(r);
  py::dict d;
  d["outcome"] = spin_value(r.outcome);
  d["probability"] = r.probability;
  d["particle"] = static_cast<int>(r.measured);
  d["post_state"] = r.post_product_state.components();
  d["effective_state"] = r.post_effective_ray.representative().components();
  d["effective_bloch"] = bloch_point(r.post_effective_ray).vec();
  d["embedded_projector"] = r.embedded_post_ray.projector();
  d["jump_distance"] = t.jump_distance;
  d["diagram_commutes"] = t.diagram_commutes;
  return d;
}

py::dict estimate_dict(const CorrelationEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["shots"] = e.shots;
  d["counts"] = e.counts;
  return d;
}

LineBundleModel bundle_of(const std::string& name, int power) {
  if (name == "trivial") return LineBundleModel::trivial();
  if (name == "tautological") return LineBundleModel::tautological_power(power);
  if (name == "dual") return LineBundleModel::tautological_power(-power);
  throw std::invalid_argument("bundle must be trivial, tautological or dual");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hopf bundles, the tautological line bundle, Berry holonomy and singlet collapse.";
  m.attr("__version__") = cli::library_version();
  m.attr("HOLONOMY_ORIENTATION_SIGN") = kHolonomyOrientationSign;

  m.def("hopf_project", [](const CVector& z) { return hopf_project(StateVector(z)).projector(); }, py::arg("z"),
        "Projector z z^dagger of a unit vector.");
  m.def("gauge_fixed", &gauge_fixed, py::arg("z"));
  m.def("representative", [](const CMatrix& p) { return Ray(p).representative().components(); }, py::arg("projector"));
  m.def("fubini_study_distance", [](const CMatrix& p, const CMatrix& q) {
    return fubini_study_distance(Ray(p), Ray(q));
  }, py::arg("p"), py::arg("q"));
  m.def("bloch_point", [](const CMatrix& p) { return bloch_point(Ray(p)).vec(); }, py::arg("projector"));
  m.def("ray_from_bloch", [](const Eigen::Vector3d& n) { return ray_from_bloch(direction(n)).projector(); },
        py::arg("n"));
  m.def("include_sphere", [](const CVector& z) { return include_sphere(StateVector(z)).components(); },
        py::arg("z"));
  m.def("spinor", [](const Eigen::Vector3d& n, int sign) { return spinor_of(direction(n), sign).components(); },
        py::arg("n"), py::arg("sign") = 1);

  m.def("psi", [](const CVector& z, Complex w) {
    const TautologicalPoint t = psi({StateVector(z), w});
    return py::make_tuple(t.base().projector(), t.vector());
  }, py::arg("z"), py::arg("w"), "(projector, vector) of psi([(z, w)]).");
  m.def("psi_inverse", [](const CMatrix& p, const CVector& v) {
    const AssociatedPoint a = psi_inverse(TautologicalPoint(Ray(p), v));
    return py::make_tuple(a.rep_z.components(), a.rep_w);
  }, py::arg("projector"), py::arg("vector"));

  m.def("split_tangent", [](const CVector& z, const CVector& x) {
    const SplitTangent s = split_tangent(TangentVector(StateVector(z), x));
    return py::make_tuple(s.vertical, s.horizontal);
  }, py::arg("z"), py::arg("x"), "(vertical, horizontal) parts of a tangent vector.");
  m.def("connection_form", [](const CVector& z, const CVector& x) {
    return connection_form(TangentVector(StateVector(z), x));
  }, py::arg("z"), py::arg("x"));
  m.def("holonomy_latitude", [](const Eigen::Vector3d& axis, double theta, int steps, const std::string& scheme) {
    const LatitudeLoop loop(direction(axis), theta, steps);
    if (scheme == "discrete") return holonomy(loop);
    if (scheme == "rk4") return holonomy_rk4(loop);
    throw std::invalid_argument("scheme must be discrete or rk4");
  }, py::arg("axis"), py::arg("theta"), py::arg("steps") = 10000, py::arg("scheme") = "discrete");
  m.def("chern_number", [](const std::string& bundle, int power, int mesh) {
    const ChernResult r = chern_lattice(bundle_of(bundle, power), mesh);
    py::dict d;
    d["chern"] = r.chern;
    d["raw"] = r.raw;
    d["max_plaquette_phase"] = r.max_plaquette_phase;
    d["plaquettes"] = r.plaquettes;
    return d;
  }, py::arg("bundle") = "tautological", py::arg("power") = 1, py::arg("mesh") = 32);

  m.def("singlet", [] { return singlet().components(); });
  m.def("born_particle2", [](const CVector& state, const Eigen::Vector3d& axis) {
    const BornProbabilities p = born_particle2(StateVector(state), direction(axis));
    return py::make_tuple(p.up, p.down);
  }, py::arg("state"), py::arg("axis"));
  m.def("measure_particle2", [](const CVector& state, const Eigen::Vector3d& axis, double draw) {
    return record_dict(measure_particle2(StateVector(state), direction(axis), draw));
  }, py::arg("state"), py::arg("axis"), py::arg("draw"));
  m.def("measure_particle1", [](const CVector& state, const Eigen::Vector3d& axis, double draw) {
    return record_dict(measure_particle1(StateVector(state), direction(axis), draw));
  }, py::arg("state"), py::arg("axis"), py::arg("draw"));
  m.def("align_embedding", [](const Eigen::Vector3d& axis, int sign, const CMatrix& effective) {
    return align_embedding(direction(axis), outcome_of(sign), Ray(effective)).projector();
  }, py::arg("axis"), py::arg("sign"), py::arg("effective"));
  m.def("correlation_exact", [](const Eigen::Vector3d& a, const Eigen::Vector3d& b, std::optional<CVector> state) {
    return state ? correlation_exact(StateVector(*state), direction(a), direction(b))
                 : correlation_exact(direction(a), direction(b));
  }, py::arg("a"), py::arg("b"), py::arg("state") = py::none());
  m.def("correlation_mc", [](const Eigen::Vector3d& a, const Eigen::Vector3d& b, std::uint64_t shots,
                             std::uint64_t seed, unsigned workers, std::uint64_t stream) {
    py::gil_scoped_release release;
    const CorrelationEstimate e = correlation_mc({direction(a), direction(b), shots, seed, stream}, workers);
    py::gil_scoped_acquire acquire;
    return estimate_dict(e);
  }, py::arg("a"), py::arg("b"), py::arg("shots"), py::arg("seed") = 0, py::arg("workers") = 1, py::arg("stream") = 0);
  m.def("chsh", [](const std::array<double, 4>& angles_deg, std::uint64_t shots, std::uint64_t seed,
                   unsigned workers) {
    const double deg = std::numbers::pi / 180.0;
    const ChshSettings s{coplanar_direction(angles_deg[0] * deg), coplanar_direction(angles_deg[1] * deg),
                         coplanar_direction(angles_deg[2] * deg), coplanar_direction(angles_deg[3] * deg)};
    py::dict d;
    d["exact"] = chsh_exact(s);
    if (shots > 0) {
      const ChshEstimate e = chsh_mc(s, shots, seed, workers);
      d["mc"] = e.s;
      d["std_error"] = e.std_error;
    }
    return d;
  }, py::arg("angles_deg") = std::array<double, 4>{0.0, 90.0, 45.0, 135.0}, py::arg("shots") = 0,
     py::arg("seed") = 0, py::arg("workers") = 1);

  m.def("run_command", [](const std::string& name, const std::string& params) {
    const cli::CommandResult r = cli::run_command(name, cli::json::parse(params));
    return py::make_tuple(r.exit_code, r.payload, r.manifest.dump());
  }, py::arg("name"), py::arg("params_json") = "{}",
     "Run a hopfc subcommand in-process: (exit_code, payload, manifest_json).");

  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);
}
