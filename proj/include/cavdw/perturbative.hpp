#pragma once

// Closed-form second-order energy shifts of a uniform molecular ensemble in a
// single-mode cavity. All functions are pure; errors are reported as
// cavdw::Error with kinds NotResonant, PerturbativeBreakdown or
// NonUniformEnsemble.

#include "cavdw/model.hpp"

namespace cavdw::perturbative {

struct PerturbationInputs {
  int n = 1;
  double omega_m = 1.0;
  double omega_c = 1.0;
  double g = 0.0;  // uniform projected coupling
  CouplingMatrix t;
  // Formulas refuse collective Rabi frequencies above (1 - eps) * 2 omega.
  double pole_epsilon = kDefaultPoleEpsilon;

  // Throws NonUniformEnsemble unless `e` has one omega_m and one g.
  static PerturbationInputs from_ensemble(const Ensemble& e,
                                          double pole_epsilon = kDefaultPoleEpsilon);

  void validate() const;
};

// Index set of the three-body sum sum_{i,j,k} t_ij t_jk: i != j and j != k
// always; i == k is optional. Excluding it is the default because it tracks
// exact diagonalization more closely on chains.
struct ThreeBodySumConvention {
  bool include_i_equals_k = false;

  bool operator==(const ThreeBodySumConvention&) const = default;
};

// sum_{i,j,k} t_ij t_jk over the convention's index set.
double three_body_sum(const CouplingMatrix& t, ThreeBodySumConvention c);

double e_vdw(const PerturbationInputs& p);
double de_p1(const PerturbationInputs& p);
double de_p2(const PerturbationInputs& p, ThreeBodySumConvention c = {});
// Off-resonant three-body term with delta = (omega_c - omega_m) / 2.
double de_p2_detuned(const PerturbationInputs& p, ThreeBodySumConvention c = {});
double crossover_detuning(const PerturbationInputs& p);
double e_crw1(const PerturbationInputs& p);
double e_crw2(const PerturbationInputs& p);
double e_dse1(const PerturbationInputs& p);
double e_dse2(const PerturbationInputs& p);

// Leading-order density prefactor Omega_N^2 / (omega^2 - c Omega_N^2).
double density_prefactor(int n, double g, double omega, double c);

EnergyBreakdown total_breakdown(const PerturbationInputs& p, ThreeBodySumConvention c = {});
EnergyBreakdown total_breakdown(const Ensemble& e, ThreeBodySumConvention c = {},
                                double pole_epsilon = kDefaultPoleEpsilon);

// Off resonance only the pair term and the three-body term have closed forms.
struct DetunedTerms {
  double e_vdw = 0.0;
  double de_p2 = 0.0;
  double delta = 0.0;
};
DetunedTerms detuned_terms(const PerturbationInputs& p, ThreeBodySumConvention c = {});

}  // namespace cavdw::perturbative
