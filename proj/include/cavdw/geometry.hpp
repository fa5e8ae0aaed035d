#pragma once

#include "cavdw/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cavdw::geometry {

// Static (non-retarded) dipole coupling projected on the polarization axis:
// mu_z,i * mu_z,j * (1 - 3 n_a^2) / R^3.
double projected_dipole_coupling(const Molecule& a, const Molecule& b, const Vec3& axis);

// Full-tensor contraction mu_i . T . mu_j with T = (I - 3 n n^T) / R^3.
double full_dipole_coupling(const Molecule& a, const Molecule& b);

// Squared Frobenius norm of the dipole tensor scaled by mu_i^2 mu_j^2, i.e. the
// orientation-free C / R^6 pair strength (= 6 mu_i^2 mu_j^2 / R^6).
double isotropic_pair_strength(const Molecule& a, const Molecule& b);

// Scalar 1/R^3 kernel mu_i mu_j / R^3 with no angular factor.
double scalar_dipole_kernel(const Molecule& a, const Molecule& b);

CouplingMatrix coupling_matrix(const Ensemble& e);

// g_i = g0 * (orientation_i . axis).
std::vector<double> projected_coupling_strengths(const Ensemble& e);

struct MoleculeTemplate {
  Vec3 orientation = Vec3::UnitZ();
  double mu = 1.0;
  double omega_m = 1.0;

  bool operator==(const MoleculeTemplate&) const = default;
};

// n molecules at (0, 0, k * spacing), k = 0..n-1.
Ensemble make_chain(int n, double spacing, const MoleculeTemplate& mol = {},
                    const CavityParams& cavity = {});

struct RandomGasOptions {
  // Defaults to 0.5 * box_side / n^(1/3) when unset.
  std::optional<double> min_separation;
  int max_attempts_per_molecule = 100000;
};

// Uniform positions in [0, box_side)^3 with rejection of close pairs;
// deterministic for a fixed seed.
Ensemble make_random_gas(int n, double box_side, std::uint64_t seed,
                         const MoleculeTemplate& mol = {}, const CavityParams& cavity = {},
                         const RandomGasOptions& options = {});

struct SlabSpec {
  double lattice_constant = 1.0;
  int half_width = 1;  // lattice spans (2w+1) x (2w+1) sites in the xy-plane
  double z0 = 1.0;     // probe height above the plane

  double areal_density() const { return 1.0 / (lattice_constant * lattice_constant); }
  void validate() const;
  bool operator==(const SlabSpec&) const = default;
};

// Probe at index 0, placed at (0, 0, z0); slab sites follow in row-major order
// at z = 0.
Ensemble make_slab_with_probe(const SlabSpec& s, const MoleculeTemplate& mol = {},
                              const CavityParams& cavity = {});

}  // namespace cavdw::geometry
