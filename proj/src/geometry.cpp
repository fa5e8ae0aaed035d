#include "cavdw/geometry.hpp"

#include "cavdw/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace cavdw::geometry {

namespace {

Vec3 separation(const Molecule& a, const Molecule& b, double& r) {
  Vec3 d = b.position - a.position;
  r = d.norm();
  if (r == 0.0) {
    throw Error(ErrorKind::DegenerateGeometry, "coincident molecular positions");
  }
  return d / r;
}

void require_positive(double value, const char* field) {
  if (!(value > 0.0)) {
    throw Error(ErrorKind::DegenerateGeometry, field, "must be > 0");
  }
}

}  // namespace

double projected_dipole_coupling(const Molecule& a, const Molecule& b, const Vec3& axis) {
  double r = 0.0;
  const Vec3 n = separation(a, b, r);
  const double mu_za = a.mu * a.orientation.dot(axis);
  const double mu_zb = b.mu * b.orientation.dot(axis);
  const double na = n.dot(axis);
  return mu_za * mu_zb * (1.0 - 3.0 * na * na) / (r * r * r);
}

double full_dipole_coupling(const Molecule& a, const Molecule& b) {
  double r = 0.0;
  const Vec3 n = separation(a, b, r);
  const double angular =
      a.orientation.dot(b.orientation) - 3.0 * a.orientation.dot(n) * b.orientation.dot(n);
  return a.mu * b.mu * angular / (r * r * r);
}

double isotropic_pair_strength(const Molecule& a, const Molecule& b) {
  double r = 0.0;
  separation(a, b, r);
  const double r3 = r * r * r;
  // tr[(I - 3nn^T)^2] = 6
  return 6.0 * a.mu * a.mu * b.mu * b.mu / (r3 * r3);
}

double scalar_dipole_kernel(const Molecule& a, const Molecule& b) {
  double r = 0.0;
  separation(a, b, r);
  return a.mu * b.mu / (r * r * r);
}

CouplingMatrix coupling_matrix(const Ensemble& e) {
  const std::size_t n = e.size();
  CouplingMatrix t(n);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      t.set(i, j, projected_dipole_coupling(e.molecules[i], e.molecules[j], e.polarization_axis));
    }
  }
  return t;
}

std::vector<double> projected_coupling_strengths(const Ensemble& e) {
  std::vector<double> g;
  g.reserve(e.size());
  for (const auto& m : e.molecules) {
    g.push_back(e.cavity.g0 * m.orientation.dot(e.polarization_axis));
  }
  return g;
}

namespace {
Molecule from_template(const MoleculeTemplate& t, const Vec3& position) {
  return Molecule{position, t.orientation, t.mu, t.omega_m};
}
}  // namespace

Ensemble make_chain(int n, double spacing, const MoleculeTemplate& mol, const CavityParams& cavity) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "chain.n", "n must be >= 1");
  if (n > 1) require_positive(spacing, "chain.spacing");
  Ensemble e;
  e.cavity = cavity;
  e.molecules.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    e.molecules.push_back(from_template(mol, Vec3(0.0, 0.0, k * spacing)));
  }
  return validate_ensemble(e);
}

Ensemble make_random_gas(int n, double box_side, std::uint64_t seed, const MoleculeTemplate& mol,
                         const CavityParams& cavity, const RandomGasOptions& options) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "random_gas.n", "n must be >= 1");
  require_positive(box_side, "random_gas.box_side");
  const double min_sep =
      options.min_separation.value_or(0.5 * box_side / std::cbrt(static_cast<double>(n)));
  if (min_sep < 0.0) {
    throw Error(ErrorKind::InvalidParameter, "random_gas.min_separation", "must be >= 0");
  }

  // mt19937_64 and a hand-rolled [0,1) map keep the stream identical across
  // standard libraries; uniform_real_distribution is implementation-defined.
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  Ensemble e;
  e.cavity = cavity;
  e.molecules.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < options.max_attempts_per_molecule && !placed; ++attempt) {
      const Vec3 p(unit() * box_side, unit() * box_side, unit() * box_side);
      bool ok = true;
      for (const auto& other : e.molecules) {
        const double d = (other.position - p).norm();
        if (d <= 0.0 || d < min_sep) {
          ok = false;
          break;
        }
      }
      if (ok) {
        e.molecules.push_back(from_template(mol, p));
        placed = true;
      }
    }
    if (!placed) {
      throw Error(ErrorKind::DegenerateGeometry, "random_gas.min_separation",
                  "could not place molecule " + std::to_string(k) +
                      "; box too small for the minimum separation");
    }
  }
  return validate_ensemble(e);
}

void SlabSpec::validate() const {
  require_positive(lattice_constant, "slab.lattice_constant");
  require_positive(z0, "slab.z0");
  if (half_width < 1) {
    throw Error(ErrorKind::InvalidParameter, "slab.half_width", "half_width must be >= 1");
  }
}

Ensemble make_slab_with_probe(const SlabSpec& s, const MoleculeTemplate& mol, const CavityParams& cavity) {
  s.validate();
  const int w = s.half_width;
  Ensemble e;
  e.cavity = cavity;
  e.molecules.reserve(static_cast<std::size_t>((2 * w + 1) * (2 * w + 1) + 1));
  e.molecules.push_back(from_template(mol, Vec3(0.0, 0.0, s.z0)));
  validate_ensemble(e);
  for (int ix = -w; ix <= w; ++ix) {
    for (int iy = -w; iy <= w; ++iy) {
      e.molecules.push_back(
          from_template(mol, Vec3(ix * s.lattice_constant, iy * s.lattice_constant, 0.0)));
    }
  }
  // Sites are distinct by construction, so the O(N^2) distinctness check is skipped.
  return e;
}

}  // namespace cavdw::geometry
