#include "cavdw/model.hpp"

#include "cavdw/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cavdw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::NonUnitOrientation: return "NonUnitOrientation";
    case ErrorKind::NonPositiveEnergy: return "NonPositiveEnergy";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NonUniformEnsemble: return "NonUniformEnsemble";
    case ErrorKind::NotResonant: return "NotResonant";
    case ErrorKind::PerturbativeBreakdown: return "PerturbativeBreakdown";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd t) : t_(std::move(t)) {
  if (t_.rows() != t_.cols()) {
    throw Error(ErrorKind::InvalidParameter, "coupling matrix must be square");
  }
  for (Eigen::Index i = 0; i < t_.rows(); ++i) {
    if (t_(i, i) != 0.0) {
      throw Error(ErrorKind::InvalidParameter, "coupling matrix diagonal must be zero");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (t_(i, j) != t_(j, i)) {
        throw Error(ErrorKind::InvalidParameter, "coupling matrix must be symmetric");
      }
    }
  }
}

void CouplingMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    throw Error(ErrorKind::InvalidParameter, "coupling matrix diagonal is fixed at zero");
  }
  t_(i, j) = value;
  t_(j, i) = value;
}

CouplingMatrix CouplingMatrix::scaled(double factor) const {
  CouplingMatrix out;
  out.t_ = t_ * factor;
  return out;
}

double CouplingMatrix::pair_sum() const {
  double s = 0.0;
  for (Eigen::Index i = 1; i < t_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) s += t_(i, j);
  }
  return s;
}

double CouplingMatrix::pair_sum_squares() const {
  double s = 0.0;
  for (Eigen::Index i = 1; i < t_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) s += t_(i, j) * t_(i, j);
  }
  return s;
}

void HamiltonianSpec::validate() const {
  if (!any_term()) {
    throw Error(ErrorKind::InvalidParameter, "hamiltonian",
                "at least one of rwa, crw, dse, ddi must be enabled");
  }
  if (photon_cutoff && *photon_cutoff < 1) {
    throw Error(ErrorKind::InvalidParameter, "hamiltonian.photon_cutoff",
                "photon cutoff must be >= 1");
  }
}

Ensemble validate_ensemble(const Ensemble& e) {
  const auto& cav = e.cavity;
  if (!(cav.omega_c > 0.0)) {
    throw Error(ErrorKind::NonPositiveEnergy, "cavity.omega_c", "omega_c must be > 0");
  }
  if (!(cav.g0 >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "cavity.g0", "g0 must be >= 0");
  }
  if (cav.photon_cutoff < 1) {
    throw Error(ErrorKind::InvalidParameter, "cavity.photon_cutoff",
                "photon_cutoff must be >= 1");
  }
  if (std::abs(e.polarization_axis.norm() - 1.0) > kOrientationTolerance) {
    throw Error(ErrorKind::NonUnitOrientation, "polarization_axis",
                "polarization axis must be a unit vector");
  }
  if (e.molecules.empty()) {
    throw Error(ErrorKind::InvalidParameter, "molecules", "ensemble must hold at least one molecule");
  }
  for (std::size_t i = 0; i < e.molecules.size(); ++i) {
    const auto& m = e.molecules[i];
    const std::string where = "molecules[" + std::to_string(i) + "]";
    if (!m.position.allFinite()) {
      throw Error(ErrorKind::InvalidParameter, where + ".position", "position must be finite");
    }
    if (std::abs(m.orientation.norm() - 1.0) > kOrientationTolerance) {
      throw Error(ErrorKind::NonUnitOrientation, where + ".orientation",
                  "orientation must be a unit vector");
    }
    if (!(m.mu >= 0.0)) {
      throw Error(ErrorKind::InvalidParameter, where + ".mu", "mu must be >= 0");
    }
    if (!(m.omega_m > 0.0)) {
      throw Error(ErrorKind::NonPositiveEnergy, where + ".omega_m", "omega_m must be > 0");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((m.position - e.molecules[j].position).norm() == 0.0) {
        throw Error(ErrorKind::DegenerateGeometry, where + ".position",
                    "coincides with molecules[" + std::to_string(j) + "]");
      }
    }
  }
  return e;
}

namespace {
bool close(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1e-300});
}
}  // namespace

bool is_uniform(const Ensemble& e, double rel_tol) {
  if (e.molecules.empty()) return true;
  const auto& first = e.molecules.front();
  const double g_first = first.orientation.dot(e.polarization_axis);
  for (const auto& m : e.molecules) {
    if (!close(m.omega_m, first.omega_m, rel_tol)) return false;
    const double g = m.orientation.dot(e.polarization_axis);
    // Projections below 1e-15 are rounding residue of an exact zero.
    if (std::abs(g - g_first) > 1e-15 && !close(g, g_first, rel_tol)) return false;
  }
  return true;
}

bool is_resonant(double omega_c, double omega_m, double rel_tol) {
  return close(omega_c, omega_m, rel_tol);
}

double effective_rabi(long long n_eff, double g) {
  if (n_eff < 0) {
    throw Error(ErrorKind::InvalidParameter, "effective Rabi index must be >= 0");
  }
  return std::sqrt(static_cast<double>(n_eff)) * g;
}

}  // namespace cavdw
