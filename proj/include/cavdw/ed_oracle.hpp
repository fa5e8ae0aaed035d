#pragma once

// Exact diagonalization of the single-mode light-matter Hamiltonian
//
//   H = omega_c a^+ a + sum_i omega_i s_i^+ s_i^-                      (bare)
//     + sum_i g_i (s_i^+ a + s_i^- a^+)                                (RWA)
//     + sum_i g_i (a^+ s_i^+ + a s_i^-)                                (CRW)
//     + (sum_i g_i s_i)^2 / omega_c                                    (DSE)
//     - sum_{i>j} s_i T_ij s_j                                         (DDI)
//
// with s_i = s_i^+ + s_i^-, on the spin (x) truncated-Fock product space.
//
// Basis layout: index = photon * 2^N + spins, where bit i of `spins` is set
// when molecule i is excited. The photon number is the slow index.

#include "cavdw/model.hpp"

#include <Eigen/SparseCore>

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cavdw::ed {

inline constexpr std::size_t kDefaultMaxDimension = 20000;
inline constexpr std::size_t kDefaultDenseLimit = 2048;
inline constexpr double kDefaultTolerance = 1e-10;

class HilbertSpace {
 public:
  HilbertSpace(int n_spins, int photon_cutoff);

  int n_spins() const noexcept { return n_spins_; }
  int photon_cutoff() const noexcept { return photon_cutoff_; }
  std::size_t spin_states() const noexcept { return std::size_t{1} << n_spins_; }
  std::size_t dimension() const noexcept { return spin_states() * (photon_cutoff_ + 1); }

  std::size_t index(std::uint64_t spins, int photons) const noexcept {
    return static_cast<std::size_t>(photons) * spin_states() + static_cast<std::size_t>(spins);
  }
  std::uint64_t spins_of(std::size_t index) const noexcept { return index % spin_states(); }
  int photons_of(std::size_t index) const noexcept {
    return static_cast<int>(index / spin_states());
  }

 private:
  int n_spins_;
  int photon_cutoff_;
};

struct Hamiltonian {
  HilbertSpace space;
  Eigen::SparseMatrix<double> matrix;  // real symmetric
};

// Throws DimensionTooLarge when the space exceeds `max_dimension`.
Hamiltonian build_hamiltonian(const Ensemble& e, const HamiltonianSpec& spec,
                              std::size_t max_dimension = kDefaultMaxDimension);

enum class SolverMethod { Auto, Dense, Lanczos };

struct SolverOptions {
  double tolerance = kDefaultTolerance;  // residual / energy-change threshold
  SolverMethod method = SolverMethod::Auto;
  std::size_t dense_limit = kDefaultDenseLimit;  // Auto switches to Lanczos above this
  std::size_t max_dimension = kDefaultMaxDimension;
  int krylov_size = 120;
  int max_restarts = 200;

  bool operator==(const SolverOptions&) const = default;
};

struct GroundStateResult {
  double energy = 0.0;
  int converged_cutoff = 0;
  double residual_norm = 0.0;
};

// Lowest eigenvalue of a real symmetric matrix. Throws NoConvergence when the
// residual ||Hv - Ev|| stays above the tolerance.
GroundStateResult ground_energy(const Hamiltonian& h, const SolverOptions& options = {});

// Doubles the photon cutoff (starting from spec.photon_cutoff or the
// ensemble's) until the ground energy changes by less than the tolerance.
// Reports the smaller cutoff of the final pair and its energy.
GroundStateResult converged_ground_energy(const Ensemble& e, const HamiltonianSpec& spec,
                                          const SolverOptions& options = {});

// Term-mask subtractions that isolate individual closed-form contributions.
enum class Target {
  Vdw,         // shift(DDI)
  PairBlock,   // shift(RWA+DDI) - shift(RWA)         ~ e_vdw + de_p1 + de_p2
  Crw1,        // shift(RWA+CRW) - shift(RWA)         ~ e_crw1
  Dse1,        // shift(DSE)                          ~ e_dse1
  OneBody,     // shift(RWA+CRW+DSE) - shift(RWA)     ~ e_crw1 + e_dse1
  CrossTerms,  // full - (RWA+DDI) - (RWA+CRW+DSE) + RWA ~ e_crw2 + e_dse2
  Total,       // shift(full)                         ~ total
};

std::string_view to_string(Target t);
Target target_from_string(std::string_view name);

double isolate_term(const Ensemble& e, Target target, const SolverOptions& options = {});

}  // namespace cavdw::ed
