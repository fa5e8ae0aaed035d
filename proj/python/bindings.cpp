#include "cavdw/cli.hpp"
#include "cavdw/ed_oracle.hpp"
#include "cavdw/error.hpp"
#include "cavdw/experiments.hpp"
#include "cavdw/geometry.hpp"
#include "cavdw/io.hpp"
#include "cavdw/model.hpp"
#include "cavdw/perturbative.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace cavdw;
namespace pt = cavdw::perturbative;
namespace ex = cavdw::experiments;

namespace {

py::object g_error_type;

void raise(const Error& e) {
  py::object exc = g_error_type(e.what());
  exc.attr("kind") = std::string(to_string(e.kind()));
  exc.attr("field") = e.field();
  PyErr_SetObject(g_error_type.ptr(), exc.ptr());
}

py::dict breakdown_dict(const EnergyBreakdown& b) {
  return py::dict("e_vdw"_a = b.e_vdw, "de_p1"_a = b.de_p1, "de_p2"_a = b.de_p2, "e_crw1"_a = b.e_crw1,
                  "e_crw2"_a = b.e_crw2, "e_dse1"_a = b.e_dse1, "e_dse2"_a = b.e_dse2, "total"_a = b.total);
}

py::object cell(const ex::Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return py::float_(*d);
  return py::str(std::get<std::string>(c));
}

py::dict scan_dict(const ex::ScanResult& r) {
  py::list rows;
  for (const auto& row : r.rows) {
    py::dict d;
    for (std::size_t i = 0; i < row.size(); ++i) d[py::str(r.columns[i])] = cell(row[i]);
    rows.append(d);
  }
  py::dict summary;
  for (const auto& s : r.summary) summary[py::str(s.key)] = cell(s.value);
  return py::dict("columns"_a = r.columns, "rows"_a = rows, "summary"_a = summary,
                  "csv"_a = io::format_scan_csv(r));
}

pt::ThreeBodySumConvention convention(bool include_i_equals_k) { return {include_i_equals_k}; }

ed::SolverOptions solver(double tolerance, std::size_t max_dimension) {
  ed::SolverOptions o;
  o.tolerance = tolerance;
  o.max_dimension = max_dimension;
  return o;
}

}  // namespace

PYBIND11_MODULE(_cavdw, m) {
  m.doc() = "Closed-form cavity-modified dispersion energies and an exact-diagonalization oracle";

  g_error_type = py::reinterpret_borrow<py::object>(
      PyErr_NewException("cavdw.CavdwError", PyExc_RuntimeError, nullptr));
  m.attr("CavdwError") = g_error_type;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      raise(e);
    }
  });

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init<>())
      .def(py::init([](double omega_c, double g0, int photon_cutoff) {
             return CavityParams{omega_c, g0, photon_cutoff};
           }),
           "omega_c"_a = 1.0, "g0"_a = 0.0, "photon_cutoff"_a = kDefaultPhotonCutoff)
      .def_readwrite("omega_c", &CavityParams::omega_c)
      .def_readwrite("g0", &CavityParams::g0)
      .def_readwrite("photon_cutoff", &CavityParams::photon_cutoff);

  py::class_<Molecule>(m, "Molecule")
      .def(py::init([](const Vec3& position, const Vec3& orientation, double mu, double omega_m) {
             return Molecule{position, orientation, mu, omega_m};
           }),
           "position"_a = Vec3::Zero().eval(), "orientation"_a = Vec3::UnitZ().eval(), "mu"_a = 1.0,
           "omega_m"_a = 1.0)
      .def_readwrite("position", &Molecule::position)
      .def_readwrite("orientation", &Molecule::orientation)
      .def_readwrite("mu", &Molecule::mu)
      .def_readwrite("omega_m", &Molecule::omega_m)
      .def("__repr__", [](const Molecule& mol) {
        std::ostringstream s;
        s << "Molecule(position=[" << mol.position.transpose() << "], mu=" << mol.mu
          << ", omega_m=" << mol.omega_m << ")";
        return s.str();
      });

  py::class_<Ensemble>(m, "Ensemble")
      .def(py::init([](std::vector<Molecule> molecules, const CavityParams& cavity, const Vec3& axis) {
             return Ensemble{std::move(molecules), cavity, axis};
           }),
           "molecules"_a, "cavity"_a = CavityParams{}, "polarization_axis"_a = Vec3::UnitZ().eval())
      .def_readwrite("molecules", &Ensemble::molecules)
      .def_readwrite("cavity", &Ensemble::cavity)
      .def_readwrite("polarization_axis", &Ensemble::polarization_axis)
      .def("__len__", &Ensemble::size);

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def(py::init([](bool rwa, bool crw, bool dse, bool ddi, std::optional<int> cutoff) {
             return HamiltonianSpec{rwa, crw, dse, ddi, cutoff};
           }),
           "rwa"_a = true, "crw"_a = true, "dse"_a = true, "ddi"_a = true, "photon_cutoff"_a = py::none())
      .def_readwrite("include_rwa", &HamiltonianSpec::include_rwa)
      .def_readwrite("include_crw", &HamiltonianSpec::include_crw)
      .def_readwrite("include_dse", &HamiltonianSpec::include_dse)
      .def_readwrite("include_ddi", &HamiltonianSpec::include_ddi)
      .def_readwrite("photon_cutoff", &HamiltonianSpec::photon_cutoff);

  py::class_<geometry::SlabSpec>(m, "SlabSpec")
      .def(py::init([](double a, int w, double z0) { return geometry::SlabSpec{a, w, z0}; }),
           "lattice_constant"_a = 1.0, "half_width"_a = 1, "z0"_a = 1.0)
      .def_readwrite("lattice_constant", &geometry::SlabSpec::lattice_constant)
      .def_readwrite("half_width", &geometry::SlabSpec::half_width)
      .def_readwrite("z0", &geometry::SlabSpec::z0)
      .def_property_readonly("areal_density", &geometry::SlabSpec::areal_density);

  py::class_<pt::PerturbationInputs>(m, "PerturbationInputs")
      .def_static("from_ensemble", &pt::PerturbationInputs::from_ensemble, "ensemble"_a,
                  "pole_epsilon"_a = kDefaultPoleEpsilon)
      .def_readonly("n", &pt::PerturbationInputs::n)
      .def_readonly("omega_m", &pt::PerturbationInputs::omega_m)
      .def_readonly("omega_c", &pt::PerturbationInputs::omega_c)
      .def_readonly("g", &pt::PerturbationInputs::g)
      .def_property_readonly("t", [](const pt::PerturbationInputs& p) { return p.t.matrix(); });

  py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
      .def_readonly("e_vdw", &EnergyBreakdown::e_vdw)
      .def_readonly("de_p1", &EnergyBreakdown::de_p1)
      .def_readonly("de_p2", &EnergyBreakdown::de_p2)
      .def_readonly("e_crw1", &EnergyBreakdown::e_crw1)
      .def_readonly("e_crw2", &EnergyBreakdown::e_crw2)
      .def_readonly("e_dse1", &EnergyBreakdown::e_dse1)
      .def_readonly("e_dse2", &EnergyBreakdown::e_dse2)
      .def_readonly("total", &EnergyBreakdown::total)
      .def("as_dict", &breakdown_dict);

  // core model and geometry
  m.def("validate_ensemble", &validate_ensemble, "ensemble"_a);
  m.def("effective_rabi", &effective_rabi, "n_eff"_a, "g"_a);
  m.def("projected_dipole_coupling", &geometry::projected_dipole_coupling, "a"_a, "b"_a,
        "axis"_a = Vec3::UnitZ().eval());
  m.def("coupling_matrix", [](const Ensemble& e) { return geometry::coupling_matrix(e).matrix(); },
        "ensemble"_a);
  m.def("projected_coupling_strengths", &geometry::projected_coupling_strengths, "ensemble"_a);
  m.def(
      "make_chain",
      [](int n, double spacing, const Vec3& orientation, double mu, double omega_m, const CavityParams& cavity) {
        return geometry::make_chain(n, spacing, {orientation, mu, omega_m}, cavity);
      },
      "n"_a, "spacing"_a, "orientation"_a = Vec3::UnitZ().eval(), "mu"_a = 1.0, "omega_m"_a = 1.0,
      "cavity"_a = CavityParams{});
  m.def(
      "make_random_gas",
      [](int n, double box_side, std::uint64_t seed, double mu, double omega_m, const CavityParams& cavity,
         std::optional<double> min_separation) {
        return geometry::make_random_gas(n, box_side, seed, {Vec3::UnitZ(), mu, omega_m}, cavity,
                                         {min_separation, 100000});
      },
      "n"_a, "box_side"_a, "seed"_a, "mu"_a = 1.0, "omega_m"_a = 1.0, "cavity"_a = CavityParams{},
      "min_separation"_a = py::none());
  m.def(
      "make_slab_with_probe",
      [](const geometry::SlabSpec& s, double mu, double omega_m, const CavityParams& cavity) {
        return geometry::make_slab_with_probe(s, {Vec3::UnitZ(), mu, omega_m}, cavity);
      },
      "slab"_a, "mu"_a = 1.0, "omega_m"_a = 1.0, "cavity"_a = CavityParams{});

  // closed forms
  auto inputs = [](const Ensemble& e, double eps) { return pt::PerturbationInputs::from_ensemble(e, eps); };
  m.def("three_body_sum",
        [](const Ensemble& e, bool inc) { return pt::three_body_sum(geometry::coupling_matrix(e), {inc}); },
        "ensemble"_a, "include_i_equals_k"_a = false);
  m.def("e_vdw", [=](const Ensemble& e) { return pt::e_vdw(inputs(e, kDefaultPoleEpsilon)); }, "ensemble"_a);
  m.def("de_p1", [=](const Ensemble& e, double eps) { return pt::de_p1(inputs(e, eps)); }, "ensemble"_a,
        "pole_epsilon"_a = kDefaultPoleEpsilon);
  m.def("de_p2",
        [=](const Ensemble& e, bool inc, double eps) { return pt::de_p2(inputs(e, eps), convention(inc)); },
        "ensemble"_a, "include_i_equals_k"_a = false, "pole_epsilon"_a = kDefaultPoleEpsilon);
  m.def("de_p2_detuned",
        [=](const Ensemble& e, bool inc, double eps) {
          return pt::de_p2_detuned(inputs(e, eps), convention(inc));
        },
        "ensemble"_a, "include_i_equals_k"_a = false, "pole_epsilon"_a = kDefaultPoleEpsilon);
  m.def("crossover_detuning", [=](const Ensemble& e) { return pt::crossover_detuning(inputs(e, kDefaultPoleEpsilon)); },
        "ensemble"_a);
  m.def("e_crw1", [=](const Ensemble& e, double eps) { return pt::e_crw1(inputs(e, eps)); }, "ensemble"_a,
        "pole_epsilon"_a = kDefaultPoleEpsilon);
  m.def("e_crw2", [=](const Ensemble& e, double eps) { return pt::e_crw2(inputs(e, eps)); }, "ensemble"_a,
        "pole_epsilon"_a = kDefaultPoleEpsilon);
  m.def("e_dse1", [=](const Ensemble& e) { return pt::e_dse1(inputs(e, kDefaultPoleEpsilon)); }, "ensemble"_a);
  m.def("e_dse2", [=](const Ensemble& e, double eps) { return pt::e_dse2(inputs(e, eps)); }, "ensemble"_a,
        "pole_epsilon"_a = kDefaultPoleEpsilon);
  m.def("density_prefactor", &pt::density_prefactor, "n"_a, "g"_a, "omega"_a, "c"_a = 0.25);
  m.def("total_breakdown",
        [](const Ensemble& e, bool inc, double eps) { return pt::total_breakdown(e, convention(inc), eps); },
        "ensemble"_a, "include_i_equals_k"_a = false, "pole_epsilon"_a = kDefaultPoleEpsilon);

  // exact diagonalization
  m.def(
      "ground_energy",
      [](const Ensemble& e, const HamiltonianSpec& spec, double tol, std::size_t cap) {
        const auto r = ed::ground_energy(ed::build_hamiltonian(e, spec, cap), solver(tol, cap));
        return py::dict("energy"_a = r.energy, "photon_cutoff"_a = r.converged_cutoff,
                        "residual_norm"_a = r.residual_norm);
      },
      "ensemble"_a, "spec"_a = HamiltonianSpec{}, "tolerance"_a = ed::kDefaultTolerance,
      "max_dimension"_a = ed::kDefaultMaxDimension);
  m.def(
      "converged_ground_energy",
      [](const Ensemble& e, const HamiltonianSpec& spec, double tol, std::size_t cap) {
        const auto r = ed::converged_ground_energy(e, spec, solver(tol, cap));
        return py::dict("energy"_a = r.energy, "photon_cutoff"_a = r.converged_cutoff,
                        "residual_norm"_a = r.residual_norm);
      },
      "ensemble"_a, "spec"_a = HamiltonianSpec{}, "tolerance"_a = ed::kDefaultTolerance,
      "max_dimension"_a = ed::kDefaultMaxDimension);
  m.def(
      "isolate_term",
      [](const Ensemble& e, const std::string& target, double tol, std::size_t cap) {
        return ed::isolate_term(e, ed::target_from_string(target), solver(tol, cap));
      },
      "ensemble"_a, "target"_a, "tolerance"_a = ed::kDefaultTolerance,
      "max_dimension"_a = ed::kDefaultMaxDimension,
      "Targets: e_vdw, pair_block, e_crw1, e_dse1, one_body, cross_terms, total.");

  // configuration, scans and the command line
  m.def("parse_config", [](const std::string& text) { return io::render_config(io::parse_config(text)); },
        "text"_a, "Validate a JSON run configuration and return its canonical rendering.");
  m.def(
      "run_config_scan",
      [](const std::string& text, std::optional<bool> oracle, std::optional<std::uint64_t> seed) {
        io::RunConfig c = io::parse_config(text);
        if (!c.scan) throw Error(ErrorKind::ValidationError, "scan", "configuration has no scan section");
        io::apply_overrides(c, seed, oracle, std::nullopt);
        ex::ScanResult r;
        {
          py::gil_scoped_release release;
          r = ex::run_scan(*c.scan);
        }
        return scan_dict(r);
      },
      "text"_a, "oracle"_a = py::none(), "seed"_a = py::none());
  m.def(
      "cli_main",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"cavdw"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "args"_a, "Run the command line in-process; returns (exit_code, stdout, stderr).");
}
