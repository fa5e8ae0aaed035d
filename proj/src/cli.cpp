#include "cavdw/cli.hpp"

#include "cavdw/error.hpp"
#include "cavdw/io.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <string>

namespace cavdw::cli {

namespace {

struct CommonFlags {
  std::string config;
  std::string out;
  std::string oracle;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "run configuration (JSON)")->required();
  cmd->add_option("--out", f.out, "output path (CSV for scans; default: stdout)");
  cmd->add_option("--oracle", f.oracle, "enable the exact-diagonalization oracle")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&f](const std::uint64_t& s) { f.seed = s, f.seed_set = true; },
      "seed for random geometries");
}

void print_term(std::ostream& out, const char* label, double value) {
  out << std::left << std::setw(8) << label << " = " << io::format_double(value) << '\n';
}

int run_energy(const io::RunConfig& c, bool oracle, std::ostream& out) {
  const Ensemble e = c.ensemble.build();
  const auto p = perturbative::PerturbationInputs::from_ensemble(e, c.tolerances.pole_epsilon);
  const perturbative::ThreeBodySumConvention conv =
      c.scan ? c.scan->convention : perturbative::ThreeBodySumConvention{};
  if (is_resonant(p.omega_c, p.omega_m)) {
    const auto b = perturbative::total_breakdown(p, conv);
    print_term(out, "e_vdw", b.e_vdw);
    print_term(out, "de_p1", b.de_p1);
    print_term(out, "de_p2", b.de_p2);
    print_term(out, "e_crw1", b.e_crw1);
    print_term(out, "e_crw2", b.e_crw2);
    print_term(out, "e_dse1", b.e_dse1);
    print_term(out, "e_dse2", b.e_dse2);
    print_term(out, "total", b.total);
  } else {
    const auto d = perturbative::detuned_terms(p, conv);
    out << "# off resonance (delta = " << io::format_double(d.delta)
        << "): only e_vdw and de_p2 have closed forms\n";
    print_term(out, "e_vdw", d.e_vdw);
    print_term(out, "de_p2", d.de_p2);
  }
  if (oracle) {
    ed::SolverOptions opts;
    opts.tolerance = c.tolerances.ed_tolerance;
    opts.max_dimension = c.tolerances.max_dimension;
    const auto r = ed::converged_ground_energy(e, HamiltonianSpec::full(), opts);
    print_term(out, "ed_shift", r.energy);
    out << "# ed photon cutoff = " << r.converged_cutoff << '\n';
  }
  return kExitOk;
}

int emit_scan(const experiments::ScanResult& r, const io::RunConfig& c, std::ostream& out) {
  if (c.output.empty()) {
    out << io::format_scan_csv(r);
  } else {
    io::write_scan_csv(r, c.output);
  }
  return r.has_runtime_failure() ? kExitRuntime : kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cavity-modified van der Waals energies and exact-diagonalization checks", "cavdw"};
  app.require_subcommand(1);

  CommonFlags flags;
  struct Command {
    const char* name;
    const char* help;
    std::optional<experiments::ScanKind> kind;
  };
  const Command commands[] = {
      {"energy", "print the closed-form energy breakdown", std::nullopt},
      {"validate", "compare closed forms with exact diagonalization over a coupling ladder",
       experiments::ScanKind::Validate},
      {"scan-detuning", "three-body term versus cavity detuning", experiments::ScanKind::Detuning},
      {"scan-density", "collective prefactors versus molecule count", experiments::ScanKind::Density},
      {"scan-slab", "probe-film lattice sums versus distance", experiments::ScanKind::Slab},
      {"scan-alignment", "energies versus dipole tilt from the polarization axis",
       experiments::ScanKind::Alignment},
  };
  std::vector<CLI::App*> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub, flags);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::size_t chosen = 0;
  while (chosen < subs.size() && !subs[chosen]->parsed()) ++chosen;
  const Command& cmd = commands[chosen];

  io::RunConfig config;
  try {
    config = io::load_config(flags.config);
    std::optional<bool> oracle;
    if (!flags.oracle.empty()) oracle = flags.oracle == "on";
    io::apply_overrides(config, flags.seed_set ? std::optional(flags.seed) : std::nullopt, oracle,
                        flags.out.empty() ? std::nullopt : std::optional(flags.out));

    if (cmd.kind == experiments::ScanKind::Validate) {
      if (oracle == false) {
        throw Error(ErrorKind::ValidationError, "--oracle", "validate always runs the oracle");
      }
      if (!config.scan) {
        experiments::ScanSpec s;
        s.kind = experiments::ScanKind::Validate;
        s.grid = {1.0, 0.25, 3, experiments::GridScale::Log};
        config.scan = s;
        io::apply_overrides(config, std::nullopt, std::nullopt, std::nullopt);
      }
      config.scan->oracle_enabled = true;
    }
    if (cmd.kind) {
      if (!config.scan) {
        throw Error(ErrorKind::ValidationError, "scan",
                    std::string("'") + cmd.name + "' needs a scan section");
      }
      if (config.scan->kind != *cmd.kind) {
        throw Error(ErrorKind::ValidationError, "scan.kind",
                    "config describes a '" + std::string(experiments::to_string(config.scan->kind)) +
                        "' scan, not '" + cmd.name + "'");
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (!cmd.kind) return run_energy(config, flags.oracle == "on", out);
    return emit_scan(experiments::run_scan(*config.scan), config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace cavdw::cli
