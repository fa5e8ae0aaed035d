#include "cavdw/ed_oracle.hpp"
#include "cavdw/error.hpp"
#include "cavdw/geometry.hpp"
#include "cavdw/perturbative.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <random>

using namespace cavdw;
using Eigen::MatrixXd;

namespace {

Ensemble chain(int n, double g0, double mu, double spacing = 1.0, int cutoff = 6) {
  return geometry::make_chain(n, spacing, {Vec3::UnitZ(), mu, 1.0}, {1.0, g0, cutoff});
}

// Dense Hamiltonian assembled from Kronecker products. Photon space is the
// leftmost factor and molecule 0 the rightmost, matching index = p 2^N + bits.
MatrixXd kron_oracle(const Ensemble& e, const HamiltonianSpec& spec, int cutoff) {
  const int n = static_cast<int>(e.size());
  const int np = cutoff + 1;
  MatrixXd a = MatrixXd::Zero(np, np);
  for (int k = 1; k < np; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const MatrixXd ad = a.transpose();
  const MatrixXd sp = (MatrixXd(2, 2) << 0, 0, 1, 0).finished();  // |e><g|
  const MatrixXd sm = sp.transpose();
  const MatrixXd id2 = MatrixXd::Identity(2, 2);
  const MatrixXd idp = MatrixXd::Identity(np, np);

  auto spin_op = [&](int i, const MatrixXd& op) {
    MatrixXd m = MatrixXd::Identity(1, 1);
    for (int k = n - 1; k >= 0; --k) {
      const MatrixXd next = Eigen::kroneckerProduct(m, k == i ? op : id2).eval();
      m = next;
    }
    return m;
  };
  const long spins = 1L << n;
  const MatrixXd ids = MatrixXd::Identity(spins, spins);
  auto on_photon = [&](const MatrixXd& op) { return Eigen::kroneckerProduct(op, ids).eval(); };
  auto on_spins = [&](const MatrixXd& op) { return Eigen::kroneckerProduct(idp, op).eval(); };

  const auto g = geometry::projected_coupling_strengths(e);
  const auto t = geometry::coupling_matrix(e);
  const double wc = e.cavity.omega_c;

  MatrixXd h = wc * on_photon(ad * a);
  MatrixXd sigma_sum = MatrixXd::Zero(spins, spins);
  for (int i = 0; i < n; ++i) {
    const MatrixXd p = spin_op(i, sp);
    const MatrixXd m = spin_op(i, sm);
    const double gi = g[static_cast<std::size_t>(i)];
    h += e.molecules[static_cast<std::size_t>(i)].omega_m * on_spins(p * m);
    if (spec.include_rwa) h += gi * (on_photon(a) * on_spins(p) + on_photon(ad) * on_spins(m));
    if (spec.include_crw) h += gi * (on_photon(ad) * on_spins(p) + on_photon(a) * on_spins(m));
    sigma_sum += gi * (p + m);
    if (spec.include_ddi) {
      for (int j = 0; j < i; ++j) {
        h -= t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
             on_spins((p + m) * (spin_op(j, sp) + spin_op(j, sm)));
      }
    }
  }
  if (spec.include_dse) h += on_spins(sigma_sum * sigma_sum) / wc;
  return h;
}

Ensemble random_ensemble(std::mt19937_64& rng, int n, bool uniform) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.8, 1.2);
  Ensemble e = geometry::make_random_gas(n, 3.0, rng(), {Vec3::UnitZ(), 0.15, 1.0}, {1.1, 0.05, 3});
  if (!uniform) {
    for (auto& m : e.molecules) {
      m.orientation = Vec3(nd(rng), nd(rng), nd(rng)).normalized();
      m.omega_m = ud(rng);
    }
  }
  return e;
}

std::vector<double> spectrum(const ed::Hamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(MatrixXd(h.matrix), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("basis layout") {
  ed::HilbertSpace s(3, 4);
  CHECK(s.dimension() == 40);
  CHECK(s.index(0b101, 2) == 21);
  CHECK(s.spins_of(21) == 0b101);
  CHECK(s.photons_of(21) == 2);
}

TEST_CASE("Jaynes-Cummings block") {
  Ensemble e = chain(1, 0.1, 1.0, 1.0, 1);
  const auto h = ed::build_hamiltonian(e, HamiltonianSpec::only(true, false, false, false));
  const MatrixXd m(h.matrix);
  MatrixXd expected = MatrixXd::Zero(4, 4);
  expected.diagonal() << 0.0, 1.0, 1.0, 2.0;  // |g0>, |e0>, |g1>, |e1>
  expected(1, 2) = expected(2, 1) = 0.1;
  CHECK(m == expected);
  CHECK(ed::ground_energy(h).energy == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("bare energies alone give a diagonal matrix") {
  Ensemble e = chain(3, 0.1, 0.2, 1.0, 2);
  e.molecules[1].omega_m = 1.3;
  auto spec = HamiltonianSpec::only(false, false, false, false);
  const MatrixXd m(ed::build_hamiltonian(e, spec).matrix);
  CHECK(MatrixXd(m.diagonal().asDiagonal()) == m);
  CHECK(m(5, 5) == 1.0 + 1.0);                // |101, 0>
  CHECK(m(8 + 2, 8 + 2) == 1.0 + 1.3);        // |010, 1>
  const double lowest = ed::ground_energy(ed::build_hamiltonian(e, spec)).energy;
  CHECK(lowest == doctest::Approx(m.diagonal().minCoeff()).scale(1.0).epsilon(1e-14));
}

TEST_CASE("self-energy matrix elements for two molecules") {
  Ensemble e = chain(2, 0.1, 0.2, 1.0, 1);
  const MatrixXd m(ed::build_hamiltonian(e, HamiltonianSpec::only(false, false, true, false)).matrix);
  // (s1 + s2)^2 = 2 + 2 s1 s2 on the spin space.
  const double d = 2 * 0.01;
  CHECK(m(0, 0) == doctest::Approx(d).epsilon(1e-15));
  CHECK(m(0, 3) == doctest::Approx(d).epsilon(1e-15));   // |gg> <-> |ee>
  CHECK(m(1, 2) == doctest::Approx(d).epsilon(1e-15));   // |eg> <-> |ge>
  CHECK(m(1, 1) == doctest::Approx(1.0 + d).epsilon(1e-15));
  CHECK(m(0, 1) == 0.0);
  CHECK(m(0, 4) == 0.0);  // no photon exchange
}

TEST_CASE("assembled Hamiltonian equals the Kronecker-product oracle") {
  std::mt19937_64 rng(8);
  for (bool uniform : {true, false}) {
    for (int trial = 0; trial < 4; ++trial) {
      const Ensemble e = random_ensemble(rng, 3, uniform);
      for (int mask = 1; mask < 16; ++mask) {
        const auto spec = HamiltonianSpec::only(mask & 1, mask & 2, mask & 4, mask & 8);
        const MatrixXd built(ed::build_hamiltonian(e, spec).matrix);
        const MatrixXd oracle = kron_oracle(e, spec, e.cavity.photon_cutoff);
        CHECK((built - oracle).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((built - built.transpose()).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("two-spin dipole block") {
  for (double t : {0.01, -0.03, 0.2}) {
    Ensemble e;
    e.molecules.resize(2);
    e.molecules[1].position = Vec3(1, 0, 0);  // equatorial pair: T = mu^2
    e.molecules[0].mu = e.molecules[1].mu = std::sqrt(std::abs(t));
    if (t < 0) e.molecules[1].position = Vec3(0, 0, std::cbrt(2.0));  // axial: T = -2 mu^2 / 2
    const double coupling = geometry::coupling_matrix(e)(0, 1);
    CHECK(coupling == doctest::Approx(t).epsilon(1e-14));
    const double exact = 1.0 - std::sqrt(1.0 + coupling * coupling);
    const auto r = ed::converged_ground_energy(e, HamiltonianSpec::only(false, false, false, true));
    CHECK(r.energy == doctest::Approx(exact).scale(1.0).epsilon(1e-14));
    CHECK(r.residual_norm <= ed::kDefaultTolerance);
  }
}

TEST_CASE("rotating-wave ground state is the bare vacuum") {
  for (double g0 : {0.0, 0.05, 0.3, 0.55}) {  // sqrt(3) g0 < omega
    Ensemble e = chain(3, g0, 0.1, 1.0, 4);
    const auto r = ed::ground_energy(
        ed::build_hamiltonian(e, HamiltonianSpec::only(true, false, false, false)));
    CHECK(std::abs(r.energy) <= 1e-12);
  }
}

TEST_CASE("label permutation leaves the spectrum unchanged") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    Ensemble e = random_ensemble(rng, 4, trial == 0);
    const auto before = spectrum(ed::build_hamiltonian(e, HamiltonianSpec::full()));
    std::shuffle(e.molecules.begin(), e.molecules.end(), rng);
    const auto after = spectrum(ed::build_hamiltonian(e, HamiltonianSpec::full()));
    REQUIRE(before.size() == after.size());
    for (std::size_t k = 0; k < before.size(); ++k) {
      CHECK(after[k] == doctest::Approx(before[k]).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("ground energy does not increase with the photon cutoff") {
  Ensemble e = chain(3, 0.2, 0.2);
  double prev = std::numeric_limits<double>::infinity();
  for (int cutoff = 1; cutoff <= 10; ++cutoff) {
    HamiltonianSpec spec = HamiltonianSpec::full();
    spec.photon_cutoff = cutoff;
    const double energy = ed::ground_energy(ed::build_hamiltonian(e, spec)).energy;
    CHECK(energy <= prev + 1e-14);
    prev = energy;
  }
}

TEST_CASE("cutoff convergence") {
  const auto free = ed::converged_ground_energy(chain(2, 0.0, 0.1), HamiltonianSpec::full());
  CHECK(free.converged_cutoff == kDefaultPhotonCutoff);

  Ensemble e = chain(2, 0.05, 0.1, 1.0, 1);
  const auto r = ed::converged_ground_energy(e, HamiltonianSpec::full());
  CHECK(r.converged_cutoff <= 8);

  // A tighter tolerance may only refine the answer within the looser one.
  ed::SolverOptions loose;
  loose.tolerance = 1e-8;
  ed::SolverOptions tight;
  tight.tolerance = 1e-10;
  const auto a = ed::converged_ground_energy(e, HamiltonianSpec::full(), loose);
  const auto b = ed::converged_ground_energy(e, HamiltonianSpec::full(), tight);
  CHECK(std::abs(a.energy - b.energy) < loose.tolerance);
  CHECK(b.converged_cutoff >= a.converged_cutoff);
}

TEST_CASE("Lanczos reproduces the dense solver") {
  std::mt19937_64 rng(4);
  for (int n : {6, 8}) {
    Ensemble e = random_ensemble(rng, n, false);
    e.cavity.photon_cutoff = 4;
    const auto h = ed::build_hamiltonian(e, HamiltonianSpec::full());
    ed::SolverOptions dense;
    dense.method = ed::SolverMethod::Dense;
    ed::SolverOptions lanczos;
    lanczos.method = ed::SolverMethod::Lanczos;
    const auto d = ed::ground_energy(h, dense);
    const auto l = ed::ground_energy(h, lanczos);
    CHECK(std::abs(d.energy - l.energy) <= 1e-10);
    CHECK(l.residual_norm <= lanczos.tolerance);
    CHECK(ed::ground_energy(h, lanczos).energy == l.energy);
  }
}

TEST_CASE("dimension cap") {
  try {
    ed::build_hamiltonian(chain(12, 0.01, 0.1), HamiltonianSpec::full());
    FAIL("no error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DimensionTooLarge);
  }
  CHECK_NOTHROW(ed::build_hamiltonian(chain(12, 0.01, 0.1, 1.0, 3), HamiltonianSpec::full()));
}

TEST_CASE("isolated terms track their closed forms") {
  // Pair term at g = 0: residual O(T^4) for a single pair, O(T^3) in general.
  {
    const Ensemble e = chain(3, 0.0, 0.05);
    const auto p = perturbative::PerturbationInputs::from_ensemble(e);
    const double t = p.t.matrix().cwiseAbs().maxCoeff();
    CHECK(std::abs(ed::isolate_term(e, ed::Target::Vdw) - perturbative::e_vdw(p)) <= t * t * t);
  }
  // One-body terms at T = 0: the residual shrinks like g^4.
  auto residual = [](ed::Target target, double g, auto closed_form) {
    const Ensemble e = chain(3, g, 0.0);
    return ed::isolate_term(e, target) - closed_form(perturbative::PerturbationInputs::from_ensemble(e));
  };
  for (auto [target, f] :
       {std::pair{ed::Target::Crw1, &perturbative::e_crw1}, std::pair{ed::Target::Dse1, &perturbative::e_dse1}}) {
    const double r1 = residual(target, 0.04, f);
    const double r2 = residual(target, 0.02, f);
    CHECK(std::abs(r1) <= 0.04 * 0.04 * 0.04 * 0.04 * 100);
    CHECK(std::abs(r1 / r2) > 12.0);
  }
  CHECK(ed::target_from_string("cross_terms") == ed::Target::CrossTerms);
  CHECK(ed::to_string(ed::Target::PairBlock) == "pair_block");
  CHECK_THROWS_AS(ed::target_from_string("nope"), Error);
}
