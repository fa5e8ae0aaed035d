#include "cavdw/perturbative.hpp"

#include "cavdw/error.hpp"
#include "cavdw/geometry.hpp"

#include <cmath>
#include <string>

namespace cavdw::perturbative {

namespace {

// Throws unless the collective Rabi frequency stays below (1 - eps) * 2 omega.
void pole_guard(double omega_rabi_sq, double omega, double eps, const char* which) {
  const double limit = (1.0 - eps) * 2.0 * omega;
  if (!(omega_rabi_sq <= limit * limit)) {
    throw Error(ErrorKind::PerturbativeBreakdown,
                std::string(which) + " = " + std::to_string(std::sqrt(omega_rabi_sq)) +
                    " is within the pole guard of 2*omega = " + std::to_string(2.0 * omega));
  }
}

void require_resonance(const PerturbationInputs& p) {
  if (!is_resonant(p.omega_c, p.omega_m)) {
    throw Error(ErrorKind::NotResonant, "closed form requires omega_c == omega_m (got " +
                                            std::to_string(p.omega_c) + " vs " +
                                            std::to_string(p.omega_m) + ")");
  }
}

double rabi_sq(long long k, double g) {
  const double o = effective_rabi(k, g);
  return o * o;
}

// (2 omega)^2 - Omega_{4N-2}^2 after the pole guard.
double bright_denominator(const PerturbationInputs& p) {
  const double o2 = rabi_sq(4LL * p.n - 2, p.g);
  pole_guard(o2, p.omega_m, p.pole_epsilon, "Omega_{4N-2}");
  const double two_w = 2.0 * p.omega_m;
  return two_w * two_w - o2;
}

}  // namespace

PerturbationInputs PerturbationInputs::from_ensemble(const Ensemble& e, double pole_epsilon) {
  validate_ensemble(e);
  if (!is_uniform(e)) {
    throw Error(ErrorKind::NonUniformEnsemble,
                "closed-form energies need a single omega_m and a single projected coupling g");
  }
  PerturbationInputs p;
  p.n = static_cast<int>(e.size());
  p.omega_m = e.molecules.front().omega_m;
  p.omega_c = e.cavity.omega_c;
  p.g = geometry::projected_coupling_strengths(e).front();
  p.t = geometry::coupling_matrix(e);
  p.pole_epsilon = pole_epsilon;
  p.validate();
  return p;
}

void PerturbationInputs::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "n", "n must be >= 1");
  if (t.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::InvalidParameter, "t", "coupling matrix size must equal n");
  }
  if (!(omega_m > 0.0)) throw Error(ErrorKind::NonPositiveEnergy, "omega_m", "must be > 0");
  if (!(omega_c > 0.0)) throw Error(ErrorKind::NonPositiveEnergy, "omega_c", "must be > 0");
  if (!std::isfinite(g)) throw Error(ErrorKind::InvalidParameter, "g", "must be finite");
  if (!(pole_epsilon > 0.0 && pole_epsilon < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "pole_epsilon", "must lie in (0, 1)");
  }
}

double three_body_sum(const CouplingMatrix& t, ThreeBodySumConvention c) {
  const auto& m = t.matrix();
  const Eigen::Index n = m.rows();
  double s = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double row = 0.0;
    double row_sq = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      row += m(i, j);
      row_sq += m(i, j) * m(i, j);
    }
    // (sum_i t_ij)^2 covers every (i, k) pair; drop i == k on request.
    s += c.include_i_equals_k ? row * row : row * row - row_sq;
  }
  return s;
}

double e_vdw(const PerturbationInputs& p) {
  p.validate();
  if (p.n < 2) return 0.0;
  return -p.t.pair_sum_squares() / (2.0 * p.omega_m);
}

double de_p1(const PerturbationInputs& p) {
  p.validate();
  if (p.n < 2) return 0.0;
  const double o2 = rabi_sq(4LL * p.n - 2, p.g);
  const double denom = bright_denominator(p);
  const double coherent = p.t.pair_sum();
  const double n = p.n;
  return -(o2 / (p.omega_m * denom)) * (1.0 / (n * (2.0 * n - 1.0))) * coherent * coherent;
}

double de_p2(const PerturbationInputs& p, ThreeBodySumConvention c) {
  p.validate();
  if (p.n < 2) return 0.0;
  const double o2 = rabi_sq(p.n - 2LL, p.g);
  pole_guard(o2, p.omega_m, p.pole_epsilon, "Omega_{N-2}");
  const double two_w = 2.0 * p.omega_m;
  const double denom = two_w * two_w - o2;
  // Omega_{N-2}^2 / (N-2) == g^2, which also covers N = 2.
  return -(p.g * p.g) * three_body_sum(p.t, c) / (2.0 * p.omega_m * denom);
}

double de_p2_detuned(const PerturbationInputs& p, ThreeBodySumConvention c) {
  p.validate();
  if (p.n < 2) return 0.0;
  const double w = p.omega_m;
  const double delta = 0.5 * (p.omega_c - p.omega_m);
  const double o2 = rabi_sq(p.n - 2LL, p.g);
  if (p.n == 2 && delta != 0.0) {
    throw Error(ErrorKind::PerturbativeBreakdown,
                "the N = 2 three-body normalization is only defined at zero detuning");
  }
  const double two_w = 2.0 * w;
  // (2w + delta)^2 - Delta^2 with Delta^2 = Omega^2 + delta^2, expanded so the
  // delta = 0 case reduces to the resonant denominator bit-for-bit.
  const double denom = two_w * two_w + 4.0 * w * delta - o2;
  const double floor = two_w * two_w * (1.0 - (1.0 - p.pole_epsilon) * (1.0 - p.pole_epsilon));
  if (!(denom >= floor)) {
    throw Error(ErrorKind::PerturbativeBreakdown,
                "detuned three-body denominator " + std::to_string(denom) +
                    " is within the pole guard");
  }
  // [2w / denom - 1/(2w)] * S / (N-2) == (g^2 - 4 w delta / (N-2)) * S / (2 w denom)
  const double shift = (p.n == 2) ? 0.0 : 4.0 * w * delta / static_cast<double>(p.n - 2);
  return -(p.g * p.g - shift) * three_body_sum(p.t, c) / (2.0 * w * denom);
}

double crossover_detuning(const PerturbationInputs& p) {
  p.validate();
  if (p.n < 2) throw Error(ErrorKind::InvalidParameter, "n", "crossover needs n >= 2");
  return rabi_sq(p.n - 2LL, p.g) / (4.0 * p.omega_m);
}

double e_crw1(const PerturbationInputs& p) {
  p.validate();
  require_resonance(p);
  const double denom = bright_denominator(p);
  return -2.0 * p.omega_m * rabi_sq(p.n, p.g) / denom;
}

double e_crw2(const PerturbationInputs& p) {
  p.validate();
  require_resonance(p);
  const double denom = bright_denominator(p);
  return -4.0 * p.g * p.g / denom * p.t.pair_sum();
}

double e_dse1(const PerturbationInputs& p) {
  p.validate();
  return p.n * p.g * p.g / p.omega_c;
}

double e_dse2(const PerturbationInputs& p) { return e_crw2(p); }

double density_prefactor(int n, double g, double omega, double c) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "n", "must be >= 0");
  if (!(omega > 0.0)) throw Error(ErrorKind::NonPositiveEnergy, "omega", "must be > 0");
  const double o2 = rabi_sq(n, g);
  const double denom = omega * omega - c * o2;
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::PerturbativeBreakdown, "density prefactor is past its pole");
  }
  return o2 / denom;
}

EnergyBreakdown total_breakdown(const PerturbationInputs& p, ThreeBodySumConvention c) {
  require_resonance(p);
  EnergyBreakdown b;
  b.e_vdw = e_vdw(p);
  b.de_p1 = de_p1(p);
  b.de_p2 = de_p2(p, c);
  b.e_crw1 = e_crw1(p);
  b.e_crw2 = e_crw2(p);
  b.e_dse1 = e_dse1(p);
  b.e_dse2 = e_dse2(p);
  b.total = b.component_sum();
  return b;
}

EnergyBreakdown total_breakdown(const Ensemble& e, ThreeBodySumConvention c, double pole_epsilon) {
  return total_breakdown(PerturbationInputs::from_ensemble(e, pole_epsilon), c);
}

DetunedTerms detuned_terms(const PerturbationInputs& p, ThreeBodySumConvention c) {
  return DetunedTerms{e_vdw(p), de_p2_detuned(p, c), 0.5 * (p.omega_c - p.omega_m)};
}

}  // namespace cavdw::perturbative
