#include "cavdw/error.hpp"
#include "cavdw/experiments.hpp"
#include "cavdw/io.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cavdw;
using namespace cavdw::experiments;

namespace {

GeneratorSpec chain_spec(int n, double g0, double mu) {
  GeneratorSpec g;
  g.kind = GeneratorKind::Chain;
  g.n = n;
  g.spacing = 1.0;
  g.molecule = {Vec3::UnitZ(), mu, 1.0};
  g.cavity = {1.0, g0, 6};
  return g;
}

// Integral over the plane outside [-L, L]^2, done in polar coordinates with
// the radial part in closed form and the angle by composite Simpson.
double tail_oracle(SlabKernel kernel, double L, double z) {
  const int m = 4000;
  const double h = (std::numbers::pi / 4) / m;
  double acc = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double phi = k * h;
    const double r_edge = L / std::cos(phi);
    const double R = std::sqrt(r_edge * r_edge + z * z);
    const double f = kernel == SlabKernel::Scalar ? 1.0 / R : 1.0 / R - z * z / (R * R * R);
    const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * f;
  }
  return 8.0 * acc * h / 3.0;
}

ScanSpec slab_scan(double a, int w, double z_lo, double z_hi, int points = 9) {
  ScanSpec s;
  s.kind = ScanKind::Slab;
  s.base.kind = GeneratorKind::Slab;
  s.base.slab = {a, w, z_lo};
  s.grid = {z_lo, z_hi, points, GridScale::Log};
  return s;
}

}  // namespace

TEST_CASE("grids") {
  const auto lin = Grid{0.0, 1.0, 5, GridScale::Linear}.values();
  CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto log = Grid{1.0, 100.0, 3, GridScale::Log}.values();
  CHECK(log.front() == 1.0);
  CHECK(log[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(log.back() == 100.0);
  CHECK_THROWS_AS(Grid({0.0, 1.0, 1, GridScale::Linear}).values(), Error);
  CHECK_THROWS_AS(Grid({0.0, 1.0, 3, GridScale::Log}).values(), Error);
  CHECK(scan_kind_from_string("slab") == ScanKind::Slab);
  CHECK_FALSE(scan_kind_from_string("bogus").has_value());
}

TEST_CASE("least squares and bisection helpers") {
  const auto f = least_squares({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.slope_stderr == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  // Residuals +-0.1 alternating: slope stderr from the textbook formula.
  const auto g = least_squares({0, 1, 2, 3}, {0.1, 0.9, 2.1, 2.9});
  const double sse = [&] {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double r = std::vector<double>{0.1, 0.9, 2.1, 2.9}[i] - (g.intercept + g.slope * i);
      s += r * r;
    }
    return s;
  }();
  CHECK(g.slope_stderr == doctest::Approx(std::sqrt(sse / 2.0 / 5.0)));

  CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(bisect_root([](double x) { return x - 1.0; }, 1.0, 3.0) == 1.0);
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), Error);
}

TEST_CASE("film tail integrals match quadrature") {
  for (double L : {5.5, 20.5, 60.5}) {
    for (double z : {1.0, 4.0, 10.0}) {
      for (SlabKernel k : {SlabKernel::Scalar, SlabKernel::Projected}) {
        const double oracle = tail_oracle(k, L, z);
        CHECK(slab_tail_coherent(k, L, z) == doctest::Approx(oracle).epsilon(1e-9));
      }
    }
  }
  // Fine lattice plus tail approaches the scalar plane integral 2 pi / z.
  const double a = 0.05;
  const int w = 400;
  const double z = 2.0;
  double sum = 0.0;
  for (int ix = -w; ix <= w; ++ix)
    for (int iy = -w; iy <= w; ++iy) {
      const double r2 = (ix * a) * (ix * a) + (iy * a) * (iy * a) + z * z;
      sum += 1.0 / (r2 * std::sqrt(r2));
    }
  const double plane = sum * a * a + slab_tail_coherent(SlabKernel::Scalar, (w + 0.5) * a, z);
  CHECK(plane == doctest::Approx(2 * std::numbers::pi / z).epsilon(1e-4));
}

TEST_CASE("detuning scan") {
  ScanSpec s;
  s.kind = ScanKind::Detuning;
  s.base = chain_spec(6, 0.1, 0.1);
  s.grid = {-0.02, 0.03, 11, GridScale::Linear};
  const ScanResult r = run_scan(s);
  CHECK(r.columns == std::vector<std::string>{"delta", "de_p2", "status"});
  REQUIRE(r.rows.size() == 11);
  const double dc = *r.summary_value("crossover_detuning");
  CHECK(dc == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(*r.summary_value("root_relative_deviation") < 1e-6);
  const double root = *r.summary_value("root");
  CHECK(*r.summary_value("root_bracket_lo") <= root);
  CHECK(root <= *r.summary_value("root_bracket_hi"));
  CHECK(*r.summary_value("root_bracket_hi") - *r.summary_value("root_bracket_lo") ==
        doctest::Approx(0.005));

  // Negative detuning enhances the attraction.
  ScanSpec sym = s;
  sym.grid = {-dc / 2, dc / 2, 2, GridScale::Linear};
  const ScanResult rs = run_scan(sym);
  CHECK(rs.value(0, "de_p2") < rs.value(1, "de_p2"));

  ScanSpec flat = s;
  flat.grid = {0.0, 0.0, 2, GridScale::Linear};
  const ScanResult rf = run_scan(flat);
  const double resonant =
      perturbative::de_p2(perturbative::PerturbationInputs::from_ensemble(s.base.build()));
  CHECK(rf.value(0, "de_p2") == resonant);
  CHECK(rf.value(1, "de_p2") == resonant);

  // A point inside the pole guard is kept with its status.
  ScanSpec pole = s;
  pole.base.cavity.g0 = 0.9;
  pole.grid = {-0.2, 0.0, 2, GridScale::Linear};
  const ScanResult rp = run_scan(pole);
  CHECK(rp.status(0) == "PerturbativeBreakdown");
  CHECK(rp.status(1) == "ok");
  CHECK_FALSE(rp.has_runtime_failure());
}

TEST_CASE("detuning scan with oracle column") {
  ScanSpec s;
  s.kind = ScanKind::Detuning;
  s.base = chain_spec(3, 0.02, 0.1);
  s.grid = {-0.01, 0.01, 3, GridScale::Linear};
  s.oracle_enabled = true;
  const ScanResult r = run_scan(s);
  CHECK(r.columns.back() == "ed_shift");
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.status(i) == "ok");
    CHECK(r.value(i, "ed_shift") < 0.0);
  }
}

TEST_CASE("density scan") {
  ScanSpec s;
  s.kind = ScanKind::Density;
  // Omega_N^2 = N g^2 reaches 0.5 at N = 50.
  s.base = chain_spec(2, std::sqrt(0.01), 0.05);
  s.grid = {1, 50, 50, GridScale::Linear};
  const ScanResult r = run_scan(s);
  REQUIRE(r.rows.size() == 50);
  CHECK(*r.summary_value("prefactor_c") == 0.25);
  CHECK(*r.summary_value("final_relative_excess_over_linear") > 0.1);
  CHECK(r.value(49, "prefactor") == doctest::Approx(0.5 / (1.0 - 0.125)).epsilon(1e-12));
  double prev = 0.0;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.status(i) == "ok");
    const double per_n = r.value(i, "prefactor") / r.value(i, "n");
    CHECK(per_n > prev);
    prev = per_n;
  }

  ScanSpec weak = s;
  weak.base.cavity.g0 = 1e-5;
  weak.grid = {4, 8, 2, GridScale::Linear};
  const ScanResult rw = run_scan(weak);
  CHECK(rw.value(1, "prefactor") / (8 * 1e-10) == doctest::Approx(1.0).epsilon(1e-9));

  ScanSpec a = s;
  a.base.cavity.g0 = 0.2;
  a.grid = {4, 5, 2, GridScale::Linear};
  ScanSpec b = s;
  b.base.cavity.g0 = 0.1;
  b.grid = {16, 17, 2, GridScale::Linear};
  CHECK(run_scan(a).value(0, "prefactor") == run_scan(b).value(0, "prefactor"));
}

TEST_CASE("slab scan slopes and density scaling") {
  const ScanResult r = run_scan(slab_scan(1.0, 30, 2.0, 6.0));
  CHECK(r.columns == std::vector<std::string>{"z0", "incoherent", "coherent", "coherent_lattice", "status"});
  CHECK(*r.summary_value("incoherent_slope") == doctest::Approx(-4.0).epsilon(0.1 / 4));
  CHECK(*r.summary_value("coherent_slope") == doctest::Approx(-2.0).epsilon(0.1 / 2));
  CHECK(std::abs(*r.summary_value("incoherent_slope") -
                 *r.summary_value("incoherent_slope_upper_half")) < 0.05);
  CHECK(std::abs(*r.summary_value("coherent_slope") - *r.summary_value("coherent_slope_upper_half")) <
        0.05);

  // Same physical film at higher areal density: halving the lattice constant
  // quadruples rho2, shrinking it by sqrt(2) doubles it.
  const ScanResult sparse = run_scan(slab_scan(1.0, 30, 3.0, 6.0, 3));
  const ScanResult quad = run_scan(slab_scan(0.5, 60, 3.0, 6.0, 3));
  const ScanResult twice = run_scan(slab_scan(1.0 / std::sqrt(2.0), 42, 3.0, 6.0, 3));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(quad.value(i, "incoherent") / sparse.value(i, "incoherent") == doctest::Approx(4.0).epsilon(0.02));
    CHECK(quad.value(i, "coherent") / sparse.value(i, "coherent") == doctest::Approx(16.0).epsilon(0.02));
    CHECK(twice.value(i, "incoherent") / sparse.value(i, "incoherent") == doctest::Approx(2.0).epsilon(0.02));
    CHECK(twice.value(i, "coherent") / sparse.value(i, "coherent") == doctest::Approx(4.0).epsilon(0.02));
  }

  const ScanResult edge = run_scan(slab_scan(1.0, 20, 1.0, 6.0, 3));
  CHECK(edge.status(0) == kStatusOutOfRegime);
  CHECK(edge.status(1) == kStatusOk);
  CHECK(edge.status(2) == kStatusOutOfRegime);

  // The projected kernel integrates to zero over the plane; only a lattice
  // and boundary residual survives.
  ScanSpec proj = slab_scan(1.0, 30, 2.0, 6.0, 3);
  const ScanResult rs = run_scan(proj);
  proj.slab_kernel = SlabKernel::Projected;
  const ScanResult rp = run_scan(proj);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rp.value(i, "coherent") < 1e-6 * rs.value(i, "coherent"));
  }
}

TEST_CASE("alignment scan") {
  ScanSpec s;
  s.kind = ScanKind::Alignment;
  s.base = chain_spec(2, 0.05, 0.2);
  s.grid = {-90.0, 90.0, 13, GridScale::Linear};
  const ScanResult r = run_scan(s);
  REQUIRE(r.rows.size() == 13);
  for (std::size_t i : {std::size_t{0}, std::size_t{12}}) {
    for (const char* c : {"de_p1", "de_p2", "e_crw1", "e_crw2", "e_dse1", "e_dse2", "e_vdw_projected"}) {
      CHECK(r.value(i, c) == 0.0);
    }
    CHECK(r.value(i, "total") == r.value(i, "e_vdw"));
  }
  CHECK(*r.summary_value("theta_max_abs_cross_term") == 0.0);
  CHECK(*r.summary_value("e_vdw_spread") == 0.0);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r.value(i, "total") == doctest::Approx(r.value(12 - i, "total")).epsilon(1e-12));
  }
  CHECK(r.value(6, "e_vdw") == doctest::Approx(-6 * std::pow(0.2, 4) / 2.0).epsilon(1e-14));
}

TEST_CASE("validation suite") {
  ScanSpec s;
  s.kind = ScanKind::Validate;
  s.base = chain_spec(3, 0.02, 0.1);
  s.grid = {1.0, 0.25, 3, GridScale::Log};
  CHECK_THROWS_AS(run_scan(s), Error);
  s.oracle_enabled = true;
  const ScanResult r = run_scan(s);
  REQUIRE(r.rows.size() == 3);
  CHECK(*r.summary_value("min_halving_ratio") >= 4.0);
  CHECK(*r.summary_value("residual_decay_exponent") > 2.0);

  ScanSpec free = s;
  free.base.cavity.g0 = 0.0;
  const ScanResult rf = run_scan(free);
  for (std::size_t i = 0; i < rf.rows.size(); ++i) {
    const double lambda = rf.value(i, "lambda");
    Ensemble e = free.base.build();
    for (auto& m : e.molecules) m.mu *= std::sqrt(lambda);
    const double vdw = perturbative::e_vdw(perturbative::PerturbationInputs::from_ensemble(e));
    CHECK(rf.value(i, "analytic_total") == vdw);
    CHECK(rf.value(i, "residual") == std::abs(rf.value(i, "ed_shift") - vdw));
  }

  ScanSpec bare = s;
  bare.base.molecule.mu = 0.0;
  const ScanResult rb = run_scan(bare);
  for (std::size_t i = 0; i < rb.rows.size(); ++i) {
    Ensemble e = bare.base.build();
    e.cavity.g0 *= rb.value(i, "lambda");
    const auto b = perturbative::total_breakdown(e);
    CHECK(rb.value(i, "analytic_total") == b.e_crw1 + b.e_dse1);
  }
}

TEST_CASE("scans are deterministic and independent of thread count") {
  ScanSpec s;
  s.kind = ScanKind::Alignment;
  s.base.kind = GeneratorKind::RandomGas;
  s.base.n = 4;
  s.base.box_side = 4.0;
  s.base.seed = 12;
  s.base.molecule.mu = 0.1;
  s.base.cavity.g0 = 0.02;
  s.grid = {0.0, 80.0, 9, GridScale::Linear};
  s.rotate_positions = true;
  s.threads = 1;
  const std::string one = io::format_scan_csv(run_scan(s));
  s.threads = 4;
  CHECK(io::format_scan_csv(run_scan(s)) == one);
  CHECK(io::format_scan_csv(run_scan(s)) == one);
}
