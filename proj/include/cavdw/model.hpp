#pragma once

// Shared domain types. Units: hbar = 1, energies in an implicit unit
// (conventionally omega_m = 1), lengths chosen so that mu^2 / R^3 is an energy.

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

namespace cavdw {

using Vec3 = Eigen::Vector3d;

inline constexpr double kOrientationTolerance = 1e-12;
inline constexpr double kDefaultPoleEpsilon = 0.05;
inline constexpr int kDefaultPhotonCutoff = 6;

struct CavityParams {
  double omega_c = 1.0;  // photon energy
  double g0 = 0.0;       // maximal light-matter coupling
  int photon_cutoff = kDefaultPhotonCutoff;

  bool operator==(const CavityParams&) const = default;
};

struct Molecule {
  Vec3 position = Vec3::Zero();
  Vec3 orientation = Vec3::UnitZ();  // transition-dipole direction, unit norm
  double mu = 1.0;                   // transition-dipole magnitude
  double omega_m = 1.0;              // transition energy

  bool operator==(const Molecule&) const = default;
};

struct Ensemble {
  std::vector<Molecule> molecules;
  CavityParams cavity;
  Vec3 polarization_axis = Vec3::UnitZ();

  std::size_t size() const noexcept { return molecules.size(); }

  bool operator==(const Ensemble&) const = default;
};

// Symmetric N x N matrix of polarization-projected dipole couplings with a
// zero diagonal.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  explicit CouplingMatrix(std::size_t n) : t_(Eigen::MatrixXd::Zero(n, n)) {}
  // Throws InvalidParameter unless `t` is square, symmetric and zero-diagonal.
  explicit CouplingMatrix(Eigen::MatrixXd t);

  std::size_t size() const noexcept { return static_cast<std::size_t>(t_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return t_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return t_; }

  // Sets t[i][j] and t[j][i] together; i != j.
  void set(std::size_t i, std::size_t j, double value);

  CouplingMatrix scaled(double factor) const;

  // Fixed-order reductions over the strict lower triangle (i > j).
  double pair_sum() const;          // sum_{i>j} t_ij
  double pair_sum_squares() const;  // sum_{i>j} t_ij^2

 private:
  Eigen::MatrixXd t_;
};

struct EnergyBreakdown {
  double e_vdw = 0.0;
  double de_p1 = 0.0;
  double de_p2 = 0.0;
  double e_crw1 = 0.0;
  double e_crw2 = 0.0;
  double e_dse1 = 0.0;
  double e_dse2 = 0.0;
  double total = 0.0;

  double component_sum() const {
    return e_vdw + de_p1 + de_p2 + e_crw1 + e_crw2 + e_dse1 + e_dse2;
  }
};

// Selects which pieces of the light-matter Hamiltonian the oracle assembles.
// Bare photon and molecular energies are always present.
struct HamiltonianSpec {
  bool include_rwa = true;
  bool include_crw = true;
  bool include_dse = true;
  bool include_ddi = true;
  std::optional<int> photon_cutoff;

  static HamiltonianSpec full() { return {}; }
  static HamiltonianSpec only(bool rwa, bool crw, bool dse, bool ddi) {
    return {rwa, crw, dse, ddi, std::nullopt};
  }

  bool any_term() const noexcept {
    return include_rwa || include_crw || include_dse || include_ddi;
  }
  // Throws InvalidParameter when no term is enabled or the cutoff is < 1.
  void validate() const;

  bool operator==(const HamiltonianSpec&) const = default;
};

// Checks every type invariant; throws Error naming the first violation.
Ensemble validate_ensemble(const Ensemble& e);

// True when all molecules share omega_m and the projected couplings g_i are
// equal. Closed-form energies are restricted to such ensembles.
bool is_uniform(const Ensemble& e, double rel_tol = 1e-12);

bool is_resonant(double omega_c, double omega_m, double rel_tol = 1e-12);

// Collective Rabi frequency sqrt(k) * g.
double effective_rabi(long long n_eff, double g);

}  // namespace cavdw
