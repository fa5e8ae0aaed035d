#include "cavdw/ed_oracle.hpp"

#include "cavdw/error.hpp"
#include "cavdw/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cavdw::ed {

HilbertSpace::HilbertSpace(int n_spins, int photon_cutoff)
    : n_spins_(n_spins), photon_cutoff_(photon_cutoff) {
  if (n_spins < 1 || n_spins > 30) {
    throw Error(ErrorKind::InvalidParameter, "n_spins", "must lie in [1, 30]");
  }
  if (photon_cutoff < 0) {
    throw Error(ErrorKind::InvalidParameter, "photon_cutoff", "must be >= 0");
  }
}

namespace {

std::size_t checked_dimension(int n_spins, int cutoff, std::size_t cap) {
  // Avoid overflow for absurd inputs before constructing the space.
  const double dim = std::ldexp(1.0, n_spins) * (cutoff + 1.0);
  if (dim > static_cast<double>(cap)) {
    throw Error(ErrorKind::DimensionTooLarge,
                "Hilbert space dimension " + std::to_string(static_cast<long long>(dim)) +
                    " exceeds the cap of " + std::to_string(cap));
  }
  return static_cast<std::size_t>(dim);
}

}  // namespace

Hamiltonian build_hamiltonian(const Ensemble& e, const HamiltonianSpec& spec,
                              std::size_t max_dimension) {
  validate_ensemble(e);
  const int n = static_cast<int>(e.size());
  const int cutoff = spec.photon_cutoff.value_or(e.cavity.photon_cutoff);
  if (cutoff < 1) {
    throw Error(ErrorKind::InvalidParameter, "photon_cutoff", "must be >= 1");
  }
  checked_dimension(n, cutoff, max_dimension);
  HilbertSpace space(n, cutoff);
  const std::size_t dim = space.dimension();

  const std::vector<double> g = geometry::projected_coupling_strengths(e);
  const CouplingMatrix t = geometry::coupling_matrix(e);
  const double wc = e.cavity.omega_c;

  double dse_diagonal = 0.0;
  for (double gi : g) dse_diagonal += gi * gi / wc;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(dim * (1 + 2 * n + (spec.include_dse || spec.include_ddi ? n * n : 0)));

  // Only entries with row >= column are generated per state and then mirrored,
  // so the matrix is symmetric bit-for-bit.
  std::map<std::size_t, double> upper;
  for (std::size_t a = 0; a < dim; ++a) {
    const std::uint64_t s = space.spins_of(a);
    const int p = space.photons_of(a);
    upper.clear();
    auto add = [&](std::uint64_t s2, int p2, double v) {
      const std::size_t b = space.index(s2, p2);
      if (b > a) upper[b] += v;
    };

    double diag = wc * p;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1U) diag += e.molecules[static_cast<std::size_t>(i)].omega_m;
    }
    if (spec.include_dse) diag += dse_diagonal;

    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      const bool excited = (s & bit) != 0;
      const double gi = g[static_cast<std::size_t>(i)];
      if (spec.include_rwa) {
        if (!excited && p > 0) add(s | bit, p - 1, gi * std::sqrt(static_cast<double>(p)));
        if (excited && p < cutoff) add(s & ~bit, p + 1, gi * std::sqrt(p + 1.0));
      }
      if (spec.include_crw) {
        if (!excited && p < cutoff) add(s | bit, p + 1, gi * std::sqrt(p + 1.0));
        if (excited && p > 0) add(s & ~bit, p - 1, gi * std::sqrt(static_cast<double>(p)));
      }
      for (int j = 0; j < i; ++j) {
        const std::uint64_t flipped = s ^ bit ^ (std::uint64_t{1} << j);
        if (spec.include_dse) add(flipped, p, 2.0 * gi * g[static_cast<std::size_t>(j)] / wc);
        if (spec.include_ddi) add(flipped, p, -t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
    }

    triplets.emplace_back(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a), diag);
    for (const auto& [b, v] : upper) {
      if (v == 0.0) continue;
      triplets.emplace_back(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a), v);
      triplets.emplace_back(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b), v);
    }
  }

  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return Hamiltonian{space, std::move(m)};
}

namespace {

double residual(const Eigen::SparseMatrix<double>& h, const Eigen::VectorXd& v, double energy) {
  return (h * v - energy * v).norm();
}

GroundStateResult dense_ground(const Hamiltonian& h, const SolverOptions& options) {
  const Eigen::MatrixXd dense(h.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "dense eigensolver failed");
  }
  GroundStateResult r;
  r.energy = solver.eigenvalues()(0);
  r.converged_cutoff = h.space.photon_cutoff();
  r.residual_norm = residual(h.matrix, solver.eigenvectors().col(0), r.energy);
  if (!(r.residual_norm <= options.tolerance)) {
    throw Error(ErrorKind::NoConvergence, "dense residual " + std::to_string(r.residual_norm) +
                                              " above tolerance");
  }
  return r;
}

// Restarted Lanczos with full reorthogonalization; the Ritz vector of the
// lowest Ritz value seeds each restart.
GroundStateResult lanczos_ground(const Hamiltonian& h, const SolverOptions& options) {
  const auto& m = h.matrix;
  const Eigen::Index dim = m.rows();
  const Eigen::Index krylov = std::min<Eigen::Index>(std::max(options.krylov_size, 2), dim);

  // Fixed-seed start vector overlaps every symmetry sector.
  std::mt19937_64 rng(0x5eed);
  Eigen::VectorXd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    start(i) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  }
  start.normalize();

  Eigen::MatrixXd basis(dim, krylov);
  GroundStateResult best;
  best.converged_cutoff = h.space.photon_cutoff();
  best.residual_norm = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = start;
    Eigen::Index used = 0;
    for (Eigen::Index k = 0; k < krylov; ++k) {
      used = k + 1;
      Eigen::VectorXd w = m * basis.col(k);
      alpha.push_back(basis.col(k).dot(w));
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd overlap = basis.leftCols(k + 1).transpose() * w;
        w -= basis.leftCols(k + 1) * overlap;
      }
      const double b = w.norm();
      if (k + 1 == krylov || b < 1e-14) break;
      beta.push_back(b);
      basis.col(k + 1) = w / b;
    }

    Eigen::VectorXd diag(used);
    Eigen::VectorXd sub(std::max<Eigen::Index>(used - 1, 0));
    for (Eigen::Index k = 0; k < used; ++k) diag(k) = alpha[static_cast<std::size_t>(k)];
    for (Eigen::Index k = 0; k + 1 < used; ++k) sub(k) = beta[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (tri.info() != Eigen::Success) break;

    Eigen::VectorXd ritz = basis.leftCols(used) * tri.eigenvectors().col(0);
    ritz.normalize();
    const double energy = ritz.dot(m * ritz);
    const double res = residual(m, ritz, energy);
    if (res < best.residual_norm) {
      best.energy = energy;
      best.residual_norm = res;
    }
    if (res <= options.tolerance) return best;
    start = ritz;
  }
  throw Error(ErrorKind::NoConvergence, "Lanczos residual " + std::to_string(best.residual_norm) +
                                            " above tolerance after restarts");
}

}  // namespace

GroundStateResult ground_energy(const Hamiltonian& h, const SolverOptions& options) {
  const std::size_t dim = static_cast<std::size_t>(h.matrix.rows());
  if (dim == 0) throw Error(ErrorKind::InvalidParameter, "empty Hamiltonian");
  switch (options.method) {
    case SolverMethod::Dense: return dense_ground(h, options);
    case SolverMethod::Lanczos: return lanczos_ground(h, options);
    case SolverMethod::Auto: break;
  }
  return dim <= options.dense_limit ? dense_ground(h, options) : lanczos_ground(h, options);
}

GroundStateResult converged_ground_energy(const Ensemble& e, const HamiltonianSpec& spec,
                                          const SolverOptions& options) {
  int cutoff = spec.photon_cutoff.value_or(e.cavity.photon_cutoff);
  HamiltonianSpec current = spec;
  current.photon_cutoff = cutoff;
  GroundStateResult prev = ground_energy(build_hamiltonian(e, current, options.max_dimension), options);
  prev.converged_cutoff = cutoff;
  for (;;) {
    current.photon_cutoff = 2 * cutoff;
    GroundStateResult next =
        ground_energy(build_hamiltonian(e, current, options.max_dimension), options);
    if (std::abs(next.energy - prev.energy) < options.tolerance) return prev;
    cutoff *= 2;
    prev = next;
    prev.converged_cutoff = cutoff;
  }
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::Vdw: return "e_vdw";
    case Target::PairBlock: return "pair_block";
    case Target::Crw1: return "e_crw1";
    case Target::Dse1: return "e_dse1";
    case Target::OneBody: return "one_body";
    case Target::CrossTerms: return "cross_terms";
    case Target::Total: return "total";
  }
  return "unknown";
}

Target target_from_string(std::string_view name) {
  for (Target t : {Target::Vdw, Target::PairBlock, Target::Crw1, Target::Dse1, Target::OneBody,
                   Target::CrossTerms, Target::Total}) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorKind::InvalidParameter, "target", "unknown isolation target '" + std::string(name) + "'");
}

double isolate_term(const Ensemble& e, Target target, const SolverOptions& options) {
  // Every mask has the bare vacuum |all down, 0 photons> at energy 0, so the
  // ground energy is the shift itself.
  auto shift = [&](bool rwa, bool crw, bool dse, bool ddi) {
    return converged_ground_energy(e, HamiltonianSpec::only(rwa, crw, dse, ddi), options).energy;
  };
  switch (target) {
    case Target::Vdw: return shift(false, false, false, true);
    case Target::PairBlock: return shift(true, false, false, true) - shift(true, false, false, false);
    case Target::Crw1: return shift(true, true, false, false) - shift(true, false, false, false);
    case Target::Dse1: return shift(false, false, true, false);
    case Target::OneBody: return shift(true, true, true, false) - shift(true, false, false, false);
    case Target::CrossTerms:
      return shift(true, true, true, true) - shift(true, false, false, true) -
             shift(true, true, true, false) + shift(true, false, false, false);
    case Target::Total: return shift(true, true, true, true);
  }
  throw Error(ErrorKind::InvalidParameter, "target", "unhandled isolation target");
}

}  // namespace cavdw::ed
