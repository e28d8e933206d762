#include "mobius/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace mobius;

TEST_CASE("twisted translation is a unitary symmetry of the Mobius Hamiltonian") {
  for (int n : {3, 4, 12}) {
    RingParams p = default_params();
    p.n_per_ring = n;
    const Eigen::MatrixXcd t = twisted_translation(n);
    const Eigen::MatrixXcd h = build_hamiltonian(p).entries;
    CHECK((t * h - h * t).norm() < 1e-13);
    CHECK((t.adjoint() * t - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).norm() < 1e-14);
  }
}

TEST_CASE("Hamiltonian is Hermitian for every topology, with on-site energy") {
  for (Topology top : {Topology::Mobius, Topology::DoubleRingPeriodic, Topology::SingleRing}) {
    RingParams p = default_params();
    p.topology = top;
    p.eps_onsite = 0.4;
    const Eigen::MatrixXcd h = build_hamiltonian(p).entries;
    CHECK(h.rows() == basis_dimension(p));
    CHECK((h - h.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("labeled numeric eigenvectors reproduce the closed-form states") {
  const RingParams p = default_params();
  const NumericEigensystem es = labeled_mobius_eigensystem(p);
  const auto states = all_eigenstates(p);
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(es.values(Eigen::Index(i)) == doctest::Approx(states[i].energy).epsilon(1e-12));
    CHECK(std::abs(es.vectors.col(Eigen::Index(i)).dot(states[i].amplitudes)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("commutator and bond-current magnetic operators coincide") {
  for (Topology top : {Topology::Mobius, Topology::DoubleRingPeriodic, Topology::SingleRing}) {
    RingParams p = default_params();
    p.topology = top;
    const auto a = magnetic_dipole_operators(p, MagneticDefinition::Commutator);
    const auto b = magnetic_dipole_operators(p, MagneticDefinition::BondCurrent);
    for (int c = 0; c < 3; ++c) {
      CHECK((a[std::size_t(c)] - b[std::size_t(c)]).cwiseAbs().maxCoeff() <= 1e-10 * magnetic_scale(p));
    }
  }
}

TEST_CASE("dyad comparison detects a perturbed table") {
  const RingParams p = default_params();
  const ElementTable good = analytic_electric_table(p);
  ElementTable bad = good;
  bad.at(0, label_index({0, Band::Up}, 12)) *= 1.01;
  const auto e = label_energies(p);
  CHECK(dyad_deviation(good, numeric_electric_elements(p), e, electric_scale(p)) < 1e-8);
  CHECK(dyad_deviation(bad, numeric_electric_elements(p), e, electric_scale(p)) > 1e-4);
}

TEST_CASE("calibration finds unit-modulus phases with tiny residual") {
  const RingParams p = default_params();
  const Calibration ce =
      calibrate_conventions(analytic_electric_table(p), numeric_electric_elements(p), 12, electric_scale(p));
  const Calibration cm =
      calibrate_conventions(analytic_magnetic_table(p), numeric_magnetic_elements(p), 12, magnetic_scale(p));
  CHECK(ce.ok);
  CHECK(cm.ok);
  for (const auto& b : ce.blocks) CHECK(std::abs(b.phase) == doctest::Approx(1.0));
  CHECK(ce.max_residual < 1e-9);
  CHECK(cm.max_residual < 1e-9);
}

TEST_CASE("perfect single ring does not couple to the magnetic field between levels") {
  RingParams p = default_params();
  p.topology = Topology::SingleRing;
  const PerfectRingReport r = perfect_ring_regression(p);
  CHECK(r.commutator_norm < 1e-12);
  CHECK(r.max_offdiag_m < 1e-12);
  CHECK(r.max_offdiag_d > 1e-3);
  CHECK_THROWS_AS(perfect_ring_regression(default_params()), InvalidParams);
}

TEST_CASE("annulene has no shared electric/magnetic transition; the Mobius ring does") {
  RingParams p = default_params();
  p.topology = Topology::DoubleRingPeriodic;
  CHECK(annulene_cross_check(p).both_count == 0);
  CHECK(shared_transitions(default_params()).both_count >= 1);
  CHECK_THROWS_AS(annulene_cross_check(default_params()), InvalidParams);
}

TEST_CASE("validation report passes for several molecules") {
  for (int n : {6, 12, 18}) {
    RingParams p = default_params();
    p.n_per_ring = n;
    const ValidationReport r = validation_report(p);
    for (const auto& c : r.checks) {
      INFO(c.name << " = " << c.value);
      CHECK(c.pass);
    }
  }
}
