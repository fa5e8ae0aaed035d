#pragma once

// Deterministic parameter scans. Each scan evaluates its grid points
// independently (optionally on several threads) and assembles rows in grid
// order. Points that fail (pole guard, oracle errors) are kept with a status
// naming the error instead of being dropped.

#include "cavdw/ed_oracle.hpp"
#include "cavdw/geometry.hpp"
#include "cavdw/model.hpp"
#include "cavdw/perturbative.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cavdw::experiments {

enum class GridScale { Linear, Log };

struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  GridScale scale = GridScale::Linear;

  // Throws InvalidParameter for points < 2 or non-positive log bounds.
  std::vector<double> values() const;
  bool operator==(const Grid&) const = default;
};

enum class GeneratorKind { Explicit, Chain, RandomGas, Slab };

// Recipe for the base ensemble; scans may override the molecule count.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Chain;
  std::vector<Molecule> molecules;  // Explicit only
  int n = 2;                        // Chain, RandomGas
  double spacing = 1.0;             // Chain
  double box_side = 10.0;           // RandomGas
  std::optional<double> min_separation;
  std::uint64_t seed = 0;  // RandomGas
  geometry::SlabSpec slab;  // Slab
  geometry::MoleculeTemplate molecule;
  CavityParams cavity;
  Vec3 polarization_axis = Vec3::UnitZ();

  Ensemble build(std::optional<int> n_override = std::nullopt) const;
  bool operator==(const GeneratorSpec&) const = default;
};

enum class ScanKind { Detuning, Density, Slab, Alignment, Validate };

std::string_view to_string(ScanKind k);
std::optional<ScanKind> scan_kind_from_string(std::string_view s);

enum class SlabKernel { Scalar, Projected };

struct ScanSpec {
  ScanKind kind = ScanKind::Detuning;
  Grid grid;
  GeneratorSpec base;
  bool oracle_enabled = false;
  perturbative::ThreeBodySumConvention convention;
  double pole_epsilon = kDefaultPoleEpsilon;
  ed::SolverOptions solver;
  int threads = 0;  // 0: hardware concurrency

  // Density scan: c in Omega_N^2 / (omega^2 - c Omega_N^2).
  double prefactor_c = 0.25;

  // Slab scan. The film replaces base.slab's lattice; the grid runs over z0.
  SlabKernel slab_kernel = SlabKernel::Scalar;
  bool tail_correction = true;

  // Alignment scan: grid in degrees; orientations (and optionally positions)
  // are rotated about `rotation_axis`.
  bool rotate_positions = false;
  Vec3 rotation_axis = Vec3::UnitY();

  bool operator==(const ScanSpec&) const = default;
};

using Cell = std::variant<double, std::string>;

struct SummaryEntry {
  std::string key;
  std::variant<double, std::string> value;
};

struct ScanResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<SummaryEntry> summary;

  std::size_t column_index(std::string_view name) const;
  double value(std::size_t row, std::string_view column) const;
  std::string status(std::size_t row) const;
  std::optional<double> summary_value(std::string_view key) const;
  // True when a row failed inside the oracle (dimension cap or solver).
  bool has_runtime_failure() const;
};

inline constexpr const char* kStatusOk = "ok";
inline constexpr const char* kStatusOutOfRegime = "out_of_regime";

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must differ
// in sign (or one of them be zero).
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol = 1e-15, int max_iter = 300);

// Integral of the coupling kernel over the part of the plane outside the
// square [-L, L]^2, per unit areal density and unit dipole product. Adding it
// to the lattice sum stands in for an unbounded film.
double slab_tail_coherent(SlabKernel kernel, double half_extent, double z0);

ScanResult run_detuning_scan(const ScanSpec& s);
ScanResult run_density_scan(const ScanSpec& s);
ScanResult run_slab_scan(const ScanSpec& s);
ScanResult run_alignment_scan(const ScanSpec& s);
ScanResult run_validation_suite(const ScanSpec& s);

ScanResult run_scan(const ScanSpec& s);

}  // namespace cavdw::experiments
