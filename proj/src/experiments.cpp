#include "cavdw/experiments.hpp"

#include "cavdw/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace cavdw::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluates fn(i) for i in [0, n) on a small worker pool; results land at
// their own index so row order never depends on scheduling.
template <typename Row, typename Fn>
std::vector<Row> parallel_rows(std::size_t n, int threads, Fn fn) {
  std::vector<Row> rows(n);
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) rows[i] = fn(i);
      });
    }
  }
  return rows;
}

std::string status_of(const Error& e) { return std::string(to_string(e.kind())); }

ScanResult make_result(std::vector<std::string> columns) {
  ScanResult r;
  r.columns = std::move(columns);
  return r;
}

void add_summary(ScanResult& r, std::string key, double v) {
  r.summary.push_back({std::move(key), v});
}
void add_summary(ScanResult& r, std::string key, std::string v) {
  r.summary.push_back({std::move(key), std::move(v)});
}

bool is_ok(const ScanResult& r, std::size_t row) { return r.status(row) == kStatusOk; }

}  // namespace

std::vector<double> Grid::values() const {
  if (points < 2) throw Error(ErrorKind::InvalidParameter, "scan.points", "must be >= 2");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw Error(ErrorKind::InvalidParameter, "scan.start", "grid bounds must be finite");
  }
  std::vector<double> v(static_cast<std::size_t>(points));
  const double last = points - 1.0;
  if (scale == GridScale::Linear) {
    for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = start + (stop - start) * (k / last);
  } else {
    if (!(start > 0.0 && stop > 0.0)) {
      throw Error(ErrorKind::InvalidParameter, "scan.scale", "log grid needs positive bounds");
    }
    const double a = std::log(start);
    const double b = std::log(stop);
    for (int k = 0; k < points; ++k) v[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * (k / last));
  }
  // Pin the endpoints exactly.
  v.front() = start;
  v.back() = stop;
  return v;
}

Ensemble GeneratorSpec::build(std::optional<int> n_override) const {
  Ensemble e;
  switch (kind) {
    case GeneratorKind::Explicit:
      e.molecules = molecules;
      e.cavity = cavity;
      break;
    case GeneratorKind::Chain:
      e = geometry::make_chain(n_override.value_or(n), spacing, molecule, cavity);
      break;
    case GeneratorKind::RandomGas:
      e = geometry::make_random_gas(n_override.value_or(n), box_side, seed, molecule, cavity,
                                    geometry::RandomGasOptions{min_separation, 100000});
      break;
    case GeneratorKind::Slab:
      e = geometry::make_slab_with_probe(slab, molecule, cavity);
      e.polarization_axis = polarization_axis;
      return e;
  }
  e.polarization_axis = polarization_axis;
  return validate_ensemble(e);
}

std::string_view to_string(ScanKind k) {
  switch (k) {
    case ScanKind::Detuning: return "detuning";
    case ScanKind::Density: return "density";
    case ScanKind::Slab: return "slab";
    case ScanKind::Alignment: return "alignment";
    case ScanKind::Validate: return "validate";
  }
  return "unknown";
}

std::optional<ScanKind> scan_kind_from_string(std::string_view s) {
  for (ScanKind k : {ScanKind::Detuning, ScanKind::Density, ScanKind::Slab, ScanKind::Alignment,
                     ScanKind::Validate}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::size_t ScanResult::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorKind::InvalidParameter, "no column named '" + std::string(name) + "'");
}

double ScanResult::value(std::size_t row, std::string_view column) const {
  const Cell& c = rows.at(row).at(column_index(column));
  if (const double* d = std::get_if<double>(&c)) return *d;
  throw Error(ErrorKind::InvalidParameter, "column '" + std::string(column) + "' is not numeric");
}

std::string ScanResult::status(std::size_t row) const {
  return std::get<std::string>(rows.at(row).at(column_index("status")));
}

std::optional<double> ScanResult::summary_value(std::string_view key) const {
  for (const auto& s : summary) {
    if (s.key == key) {
      if (const double* d = std::get_if<double>(&s.value)) return *d;
    }
  }
  return std::nullopt;
}

bool ScanResult::has_runtime_failure() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string st = status(r);
    if (st == to_string(ErrorKind::DimensionTooLarge) || st == to_string(ErrorKind::NoConvergence)) {
      return true;
    }
  }
  return false;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InvalidParameter, "least squares needs >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidParameter, "least squares needs distinct x");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - f.intercept - f.slope * x[i];
      ssr += r * r;
    }
    f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  }
  return f;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                   int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "bisection interval does not bracket a sign change");
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi || std::abs(hi - lo) <= rel_tol * std::abs(mid)) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double slab_tail_coherent(SlabKernel kernel, double half_extent, double z0) {
  const double L = half_extent;
  const double z = z0;
  const double root = std::sqrt(2.0 * L * L + z * z);
  const double u = L * L / (z * root);
  if (kernel == SlabKernel::Scalar) {
    // plane: 2 pi / z; square: (4 / z) atan(u)
    return 2.0 * std::numbers::pi / z - 4.0 / z * std::atan(u);
  }
  // The projected kernel (1 - 3 z^2/R^2) / R^3 integrates to d/dz[z * I_3(z)]
  // over the square and to zero over the plane.
  const double du = -L * L * 2.0 * (L * L + z * z) / (z * z * root * root * root);
  return -4.0 * du / (1.0 + u * u);
}

namespace {

perturbative::PerturbationInputs inputs_for(const Ensemble& e, const ScanSpec& s) {
  return perturbative::PerturbationInputs::from_ensemble(e, s.pole_epsilon);
}

}  // namespace

ScanResult run_detuning_scan(const ScanSpec& s) {
  const std::vector<double> deltas = s.grid.values();
  const Ensemble base = s.base.build();
  std::vector<std::string> cols{"delta", "de_p2", "status"};
  if (s.oracle_enabled) cols.emplace_back("ed_shift");
  ScanResult r = make_result(cols);

  const double omega_m = base.molecules.front().omega_m;
  auto at = [&](double delta) {
    Ensemble e = base;
    e.cavity.omega_c = omega_m + 2.0 * delta;
    return e;
  };

  r.rows = parallel_rows<std::vector<Cell>>(deltas.size(), s.threads, [&](std::size_t i) {
    std::vector<Cell> row{deltas[i], kNaN, std::string(kStatusOk)};
    if (s.oracle_enabled) row.emplace_back(kNaN);
    try {
      const Ensemble e = at(deltas[i]);
      row[1] = perturbative::de_p2_detuned(inputs_for(e, s), s.convention);
      if (s.oracle_enabled) row[3] = ed::isolate_term(e, ed::Target::PairBlock, s.solver);
    } catch (const Error& err) {
      row[2] = status_of(err);
    }
    return row;
  });

  // Crossover from the resonant inputs; it depends on omega_m only.
  Ensemble resonant = base;
  resonant.cavity.omega_c = omega_m;
  const auto p0 = inputs_for(resonant, s);
  const double delta_c = perturbative::crossover_detuning(p0);
  add_summary(r, "crossover_detuning", delta_c);

  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
    if (!is_ok(r, i) || !is_ok(r, i + 1)) continue;
    const double a = r.value(i, "de_p2");
    const double b = r.value(i + 1, "de_p2");
    if (a == 0.0 || b == 0.0 || (a > 0.0) != (b > 0.0)) {
      auto f = [&](double delta) {
        return perturbative::de_p2_detuned(inputs_for(at(delta), s), s.convention);
      };
      const double root = bisect_root(f, deltas[i], deltas[i + 1]);
      add_summary(r, "root", root);
      add_summary(r, "root_bracket_lo", deltas[i]);
      add_summary(r, "root_bracket_hi", deltas[i + 1]);
      if (delta_c != 0.0) add_summary(r, "root_relative_deviation", std::abs(root - delta_c) / std::abs(delta_c));
      break;
    }
  }
  return r;
}

ScanResult run_density_scan(const ScanSpec& s) {
  std::vector<int> ns;
  for (double v : s.grid.values()) ns.push_back(static_cast<int>(std::lround(v)));
  std::vector<std::string> cols{"n", "de_p1", "de_p2", "e_crw1", "prefactor", "linear_extrapolation", "status"};
  if (s.oracle_enabled) {
    cols.emplace_back("total");
    cols.emplace_back("ed_shift");
  }
  ScanResult r = make_result(cols);

  // Linear reference through the smallest grid N.
  const int n_ref = std::max(1, ns.front());
  double prefactor_ref = kNaN;
  double g_ref = kNaN;
  double omega_ref = kNaN;
  try {
    const Ensemble e = s.base.build(n_ref);
    omega_ref = e.molecules.front().omega_m;
    g_ref = geometry::projected_coupling_strengths(e).front();
    prefactor_ref = perturbative::density_prefactor(n_ref, g_ref, omega_ref, s.prefactor_c);
  } catch (const Error&) {
  }

  r.rows = parallel_rows<std::vector<Cell>>(ns.size(), s.threads, [&](std::size_t i) {
    const int n = ns[i];
    std::vector<Cell> row{static_cast<double>(n), kNaN, kNaN, kNaN, kNaN, kNaN, std::string(kStatusOk)};
    if (s.oracle_enabled) {
      row.emplace_back(kNaN);
      row.emplace_back(kNaN);
    }
    try {
      if (n < 1) throw Error(ErrorKind::InvalidParameter, "scan.start", "n must be >= 1");
      const Ensemble e = s.base.build(n);
      const auto p = inputs_for(e, s);
      row[5] = prefactor_ref * n / n_ref;
      row[4] = perturbative::density_prefactor(n, p.g, p.omega_m, s.prefactor_c);
      row[1] = perturbative::de_p1(p);
      row[2] = perturbative::de_p2(p, s.convention);
      row[3] = perturbative::e_crw1(p);
      if (s.oracle_enabled) {
        row[7] = perturbative::total_breakdown(p, s.convention).total;
        row[8] = ed::isolate_term(e, ed::Target::Total, s.solver);
      }
    } catch (const Error& err) {
      row[6] = status_of(err);
    }
    return row;
  });

  add_summary(r, "prefactor_c", s.prefactor_c);
  double max_excess = kNaN;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (!is_ok(r, i)) continue;
    const double excess = r.value(i, "prefactor") / r.value(i, "linear_extrapolation") - 1.0;
    if (std::isnan(max_excess) || excess > max_excess) max_excess = excess;
  }
  add_summary(r, "max_relative_excess_over_linear", max_excess);
  if (!r.rows.empty() && is_ok(r, r.rows.size() - 1)) {
    const auto last = r.rows.size() - 1;
    add_summary(r, "final_relative_excess_over_linear",
                r.value(last, "prefactor") / r.value(last, "linear_extrapolation") - 1.0);
  }
  return r;
}

ScanResult run_slab_scan(const ScanSpec& s) {
  const std::vector<double> z0s = s.grid.values();
  geometry::SlabSpec film = s.base.slab;
  ScanResult r = make_result({"z0", "incoherent", "coherent", "coherent_lattice", "status"});
  const geometry::MoleculeTemplate mol = s.base.molecule;
  const Vec3 axis = s.base.polarization_axis;

  r.rows = parallel_rows<std::vector<Cell>>(z0s.size(), s.threads, [&](std::size_t i) {
    std::vector<Cell> row{z0s[i], kNaN, kNaN, kNaN, std::string(kStatusOk)};
    try {
      geometry::SlabSpec spec = film;
      spec.z0 = z0s[i];
      spec.validate();
      const double a = spec.lattice_constant;
      const int w = spec.half_width;
      const Molecule probe{Vec3(0.0, 0.0, spec.z0), mol.orientation, mol.mu, mol.omega_m};
      Molecule site{Vec3::Zero(), mol.orientation, mol.mu, mol.omega_m};
      double incoherent = 0.0;
      double coherent = 0.0;
      for (int ix = -w; ix <= w; ++ix) {
        for (int iy = -w; iy <= w; ++iy) {
          site.position = Vec3(ix * a, iy * a, 0.0);
          const double t = s.slab_kernel == SlabKernel::Scalar
                               ? geometry::scalar_dipole_kernel(probe, site)
                               : geometry::projected_dipole_coupling(probe, site, axis);
          incoherent += t * t;
          coherent += t;
        }
      }
      double coherent_full = coherent;
      if (s.tail_correction) {
        double dipoles = mol.mu * mol.mu;
        if (s.slab_kernel == SlabKernel::Projected) {
          const double proj = mol.orientation.dot(axis);
          dipoles *= proj * proj;
        }
        coherent_full += spec.areal_density() * dipoles * slab_tail_coherent(s.slab_kernel, (w + 0.5) * a, spec.z0);
      }
      row[1] = incoherent;
      row[2] = coherent_full * coherent_full;
      row[3] = coherent * coherent;
      if (spec.z0 < 2.0 * a || spec.z0 > w * a / 5.0) row[4] = std::string(kStatusOutOfRegime);
    } catch (const Error& err) {
      row[4] = status_of(err);
    }
    return row;
  });

  add_summary(r, "areal_density", film.areal_density());
  add_summary(r, "kernel", std::string(s.slab_kernel == SlabKernel::Scalar ? "scalar" : "projected"));
  add_summary(r, "tail_correction", std::string(s.tail_correction ? "on" : "off"));

  auto fit = [&](const char* column, bool upper_half) -> std::optional<LinearFit> {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      if (!is_ok(r, i)) continue;
      if (upper_half && i < r.rows.size() / 2) continue;
      const double v = r.value(i, column);
      if (!(v > 0.0)) continue;
      x.push_back(std::log(r.value(i, "z0")));
      y.push_back(std::log(v));
    }
    if (x.size() < 2) return std::nullopt;
    return least_squares(x, y);
  };
  for (const char* column : {"incoherent", "coherent", "coherent_lattice"}) {
    if (auto f = fit(column, false)) {
      add_summary(r, std::string(column) + "_slope", f->slope);
      add_summary(r, std::string(column) + "_slope_stderr", f->slope_stderr);
    }
    if (auto f = fit(column, true)) add_summary(r, std::string(column) + "_slope_upper_half", f->slope);
  }
  return r;
}

namespace {

// Rotation by `degrees` about `axis`, exact at multiples of 90 degrees.
Eigen::Matrix3d rotation(const Vec3& axis, double degrees) {
  double c = 0.0;
  double s = 0.0;
  const double quarter = degrees / 90.0;
  if (quarter == std::round(quarter)) {
    const long q = ((std::lround(quarter) % 4) + 4) % 4;
    c = (q == 0) ? 1.0 : (q == 2) ? -1.0 : 0.0;
    s = (q == 1) ? 1.0 : (q == 3) ? -1.0 : 0.0;
  } else {
    const double rad = degrees * std::numbers::pi / 180.0;
    c = std::cos(rad);
    s = std::sin(rad);
  }
  const Vec3 k = axis.normalized();
  Eigen::Matrix3d K;
  K << 0.0, -k.z(), k.y(), k.z(), 0.0, -k.x(), -k.y(), k.x(), 0.0;
  return Eigen::Matrix3d::Identity() * c + s * K + (1.0 - c) * (k * k.transpose());
}

}  // namespace

ScanResult run_alignment_scan(const ScanSpec& s) {
  const std::vector<double> thetas = s.grid.values();
  const Ensemble base = s.base.build();
  std::vector<std::string> cols{"theta_deg", "e_vdw", "e_vdw_projected", "de_p1", "de_p2",
                                "e_crw1", "e_crw2", "e_dse1", "e_dse2", "total", "status"};
  if (s.oracle_enabled) cols.emplace_back("ed_shift");
  ScanResult r = make_result(cols);

  Vec3 centroid = Vec3::Zero();
  for (const auto& m : base.molecules) centroid += m.position;
  centroid /= static_cast<double>(base.size());

  r.rows = parallel_rows<std::vector<Cell>>(thetas.size(), s.threads, [&](std::size_t i) {
    std::vector<Cell> row(cols.size(), Cell{kNaN});
    row[0] = thetas[i];
    row[10] = std::string(kStatusOk);
    try {
      const Eigen::Matrix3d rot = rotation(s.rotation_axis, thetas[i]);
      Ensemble e = base;
      for (auto& m : e.molecules) {
        m.orientation = rot * m.orientation;
        if (s.rotate_positions) m.position = centroid + rot * (m.position - centroid);
      }
      double iso = 0.0;
      for (std::size_t a = 1; a < e.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          iso += geometry::isotropic_pair_strength(e.molecules[a], e.molecules[b]);
        }
      }
      const double omega_m = e.molecules.front().omega_m;
      const double e_vdw_iso = -iso / (2.0 * omega_m);
      row[1] = e_vdw_iso;
      const auto p = inputs_for(e, s);
      const auto b = perturbative::total_breakdown(p, s.convention);
      row[2] = b.e_vdw;
      row[3] = b.de_p1;
      row[4] = b.de_p2;
      row[5] = b.e_crw1;
      row[6] = b.e_crw2;
      row[7] = b.e_dse1;
      row[8] = b.e_dse2;
      row[9] = e_vdw_iso + (b.total - b.e_vdw);
      if (s.oracle_enabled) row[11] = ed::isolate_term(e, ed::Target::Total, s.solver);
    } catch (const Error& err) {
      row[10] = status_of(err);
    }
    return row;
  });

  double best_cross = -1.0;
  double best_cross_theta = kNaN;
  double min_total = kNaN;
  double min_total_theta = kNaN;
  double vdw_lo = kNaN;
  double vdw_hi = kNaN;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (!is_ok(r, i)) continue;
    const double cross = std::abs(r.value(i, "e_crw2") + r.value(i, "e_dse2"));
    if (cross > best_cross) {
      best_cross = cross;
      best_cross_theta = thetas[i];
    }
    const double total = r.value(i, "total");
    if (std::isnan(min_total) || total < min_total) {
      min_total = total;
      min_total_theta = thetas[i];
    }
    const double v = r.value(i, "e_vdw");
    vdw_lo = std::isnan(vdw_lo) ? v : std::min(vdw_lo, v);
    vdw_hi = std::isnan(vdw_hi) ? v : std::max(vdw_hi, v);
  }
  add_summary(r, "theta_max_abs_cross_term", best_cross_theta);
  add_summary(r, "theta_min_total", min_total_theta);
  add_summary(r, "e_vdw_spread", vdw_hi - vdw_lo);
  return r;
}

ScanResult run_validation_suite(const ScanSpec& s) {
  if (!s.oracle_enabled) {
    throw Error(ErrorKind::InvalidParameter, "scan.oracle", "the validation suite needs the oracle");
  }
  const std::vector<double> lambdas = s.grid.values();
  const Ensemble base = s.base.build();
  ScanResult r = make_result({"lambda", "analytic_total", "ed_shift", "residual", "relative_residual", "status"});

  r.rows = parallel_rows<std::vector<Cell>>(lambdas.size(), s.threads, [&](std::size_t i) {
    const double lambda = lambdas[i];
    std::vector<Cell> row{lambda, kNaN, kNaN, kNaN, kNaN, std::string(kStatusOk)};
    try {
      if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidParameter, "scan.start", "lambda must be > 0");
      // g scales by lambda and mu by sqrt(lambda), so T scales by lambda.
      Ensemble e = base;
      e.cavity.g0 *= lambda;
      for (auto& m : e.molecules) m.mu *= std::sqrt(lambda);
      const double analytic = perturbative::total_breakdown(inputs_for(e, s), s.convention).total;
      const double exact = ed::isolate_term(e, ed::Target::Total, s.solver);
      row[1] = analytic;
      row[2] = exact;
      row[3] = std::abs(exact - analytic);
      row[4] = analytic != 0.0 ? std::abs(exact - analytic) / std::abs(analytic) : kNaN;
    } catch (const Error& err) {
      row[5] = status_of(err);
    }
    return row;
  });

  std::vector<double> x;
  std::vector<double> y;
  double min_ratio = kNaN;
  double max_rel = kNaN;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (!is_ok(r, i)) continue;
    const double res = r.value(i, "residual");
    if (res > 0.0) {
      x.push_back(std::log(lambdas[i]));
      y.push_back(std::log(res));
    }
    const double rel = r.value(i, "relative_residual");
    if (!std::isnan(rel)) max_rel = std::isnan(max_rel) ? rel : std::max(max_rel, rel);
    if (i + 1 < r.rows.size() && is_ok(r, i + 1) &&
        std::abs(lambdas[i + 1] - 0.5 * lambdas[i]) <= 1e-12 * lambdas[i]) {
      const double ratio = res / r.value(i + 1, "residual");
      min_ratio = std::isnan(min_ratio) ? ratio : std::min(min_ratio, ratio);
    }
  }
  if (x.size() >= 2) add_summary(r, "residual_decay_exponent", least_squares(x, y).slope);
  add_summary(r, "min_halving_ratio", min_ratio);
  add_summary(r, "max_relative_residual", max_rel);
  return r;
}

ScanResult run_scan(const ScanSpec& s) {
  switch (s.kind) {
    case ScanKind::Detuning: return run_detuning_scan(s);
    case ScanKind::Density: return run_density_scan(s);
    case ScanKind::Slab: return run_slab_scan(s);
    case ScanKind::Alignment: return run_alignment_scan(s);
    case ScanKind::Validate: return run_validation_suite(s);
  }
  throw Error(ErrorKind::InvalidParameter, "scan.kind", "unknown scan kind");
}

}  // namespace cavdw::experiments
