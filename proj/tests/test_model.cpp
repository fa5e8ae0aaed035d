#include "cavdw/error.hpp"
#include "cavdw/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cavdw;

namespace {

Ensemble pair_at(double distance) {
  Ensemble e;
  e.molecules.resize(2);
  e.molecules[1].position = Vec3(0, 0, distance);
  return e;
}

ErrorKind kind_of(const Ensemble& e) {
  try {
    validate_ensemble(e);
  } catch (const Error& err) {
    return err.kind();
  }
  FAIL("expected validate_ensemble to throw");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("a well-formed pair validates unchanged") {
  const Ensemble e = pair_at(1.0);
  CHECK(validate_ensemble(e) == e);
}

TEST_CASE("coincident molecules are degenerate") {
  CHECK(kind_of(pair_at(0.0)) == ErrorKind::DegenerateGeometry);
}

TEST_CASE("orientation of norm two is rejected with its field") {
  Ensemble e = pair_at(1.0);
  e.molecules[1].orientation = Vec3(0, 0, 2);
  try {
    validate_ensemble(e);
    FAIL("no error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonUnitOrientation);
    CHECK(err.field() == "molecules[1].orientation");
  }
}

TEST_CASE("energies and parameters outside their domains") {
  Ensemble e = pair_at(1.0);
  e.cavity.omega_c = 0.0;
  CHECK(kind_of(e) == ErrorKind::NonPositiveEnergy);

  e = pair_at(1.0);
  e.molecules[0].omega_m = -1.0;
  CHECK(kind_of(e) == ErrorKind::NonPositiveEnergy);

  e = pair_at(1.0);
  e.cavity.g0 = -0.1;
  CHECK(kind_of(e) == ErrorKind::InvalidParameter);

  e = pair_at(1.0);
  e.cavity.photon_cutoff = 0;
  CHECK(kind_of(e) == ErrorKind::InvalidParameter);

  e = pair_at(1.0);
  e.molecules[0].mu = -1.0;
  CHECK(kind_of(e) == ErrorKind::InvalidParameter);

  e = pair_at(1.0);
  e.polarization_axis = Vec3(1, 1, 0);
  CHECK(kind_of(e) == ErrorKind::NonUnitOrientation);

  e.molecules.clear();
  e.polarization_axis = Vec3::UnitZ();
  CHECK(kind_of(e) == ErrorKind::InvalidParameter);
}

TEST_CASE("uniformity and resonance predicates") {
  Ensemble e = pair_at(1.0);
  CHECK(is_uniform(e));
  e.molecules[1].omega_m = 1.1;
  CHECK_FALSE(is_uniform(e));
  e.molecules[1].omega_m = 1.0;
  e.molecules[1].orientation = Vec3(1, 0, 0);
  CHECK_FALSE(is_uniform(e));
  e.molecules[0].orientation = Vec3(0, 1, 0);
  CHECK(is_uniform(e));  // both projections vanish

  CHECK(is_resonant(1.0, 1.0));
  CHECK_FALSE(is_resonant(1.0, 1.001));
}

TEST_CASE("effective Rabi frequency examples") {
  CHECK(effective_rabi(10, 0.1) == doctest::Approx(0.316227766016838).epsilon(1e-14));
  CHECK(effective_rabi(0, 0.5) == 0.0);
  const int n = 3;
  CHECK(effective_rabi(4 * n - 2, 0.1) == effective_rabi(10, 0.1));
  CHECK_THROWS_AS(effective_rabi(-1, 0.1), Error);
}

TEST_CASE("effective Rabi frequency squares back to k g^2") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> kd(0, 1000000);
  std::uniform_real_distribution<double> gd(0.0, 1000.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const long long k = kd(rng);
    const double g = gd(rng);
    const double r = effective_rabi(k, g);
    const double expected = static_cast<double>(k) * g * g;
    CHECK(std::abs(r * r - expected) <= 8 * std::numeric_limits<double>::epsilon() * expected);
  }
}

TEST_CASE("coupling matrix invariants") {
  CouplingMatrix t(3);
  t.set(0, 2, -0.25);
  CHECK(t(2, 0) == -0.25);
  CHECK_THROWS_AS(t.set(1, 1, 1.0), Error);
  t.set(0, 1, 0.5);
  CHECK(t.pair_sum() == doctest::Approx(0.25));
  CHECK(t.pair_sum_squares() == doctest::Approx(0.3125));
  CHECK(t.scaled(2.0)(0, 1) == 1.0);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(CouplingMatrix{bad}, Error);
  bad(1, 0) = 1.0;
  CHECK_NOTHROW(CouplingMatrix{bad});
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(CouplingMatrix{bad}, Error);
  CHECK_THROWS_AS(CouplingMatrix{Eigen::MatrixXd::Zero(2, 3)}, Error);
}

TEST_CASE("Hamiltonian term selection needs at least one term") {
  CHECK_NOTHROW(HamiltonianSpec::full().validate());
  CHECK_THROWS_AS(HamiltonianSpec::only(false, false, false, false).validate(), Error);
  HamiltonianSpec s = HamiltonianSpec::full();
  s.photon_cutoff = 0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("breakdown component sum") {
  EnergyBreakdown b{1, 2, 3, 4, 5, 6, 7, 0};
  CHECK(b.component_sum() == 28.0);
}
