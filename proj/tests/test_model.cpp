#include "mobius/jacobi.hpp"
#include "mobius/model.hpp"
#include "mobius/oracle.hpp"
#include "mobius/units.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

using namespace mobius;

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("band energies of the reference molecule") {
  const RingParams p = default_params();
  CHECK(band_energy(p, {0, Band::Down}) == doctest::Approx(-10.8).epsilon(1e-14));
  CHECK(lowest_interband_gap(p) == doctest::Approx(7.4453).epsilon(1e-5));
  CHECK(band_energy(p, {0, Band::Up}) == band_energy(p, {1, Band::Up}));
  // ground level is nondegenerate
  std::vector<double> e = label_energies(p);
  std::sort(e.begin(), e.end());
  CHECK(e[1] - e[0] > 0.1);
}

TEST_CASE("closed-form spectrum matches Eigen's Hermitian solver for many rings") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.5, 5.0);
  for (int n = 3; n <= 30; ++n) {
    RingParams p = default_params();
    p.n_per_ring = n;
    p.v_inter = u(rng);
    p.xi_intra = u(rng);
    std::vector<double> closed = label_energies(p);
    std::sort(closed.begin(), closed.end());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_hamiltonian(p).entries);
    for (int i = 0; i < 2 * n; ++i) CHECK(closed[std::size_t(i)] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-11));
  }
}

TEST_CASE("closed-form eigenstates are orthonormal eigenvectors") {
  for (int n : {3, 5, 12}) {
    RingParams p = default_params();
    p.n_per_ring = n;
    p.v_inter = 1.3;
    const Eigen::MatrixXcd h = build_hamiltonian(p).entries;
    const auto states = all_eigenstates(p);
    Eigen::MatrixXcd u(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      const auto& s = states[std::size_t(i)];
      CHECK((h * s.amplitudes - s.energy * s.amplitudes).norm() < 1e-12);
      u.col(i) = s.amplitudes;
    }
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).norm() < 1e-12);
  }
}

TEST_CASE("ground state is uniform") {
  const RingParams p = default_params();
  const EigenState g = ground_state(p);
  for (Eigen::Index i = 0; i < g.amplitudes.size(); ++i) {
    CHECK(std::abs(g.amplitudes(i)) == doctest::Approx(1.0 / std::sqrt(24.0)));
  }
  CHECK_THROWS_AS(transition_frequency(p, ground_label), std::exception);
  CHECK(transition_frequency(p, {0, Band::Up}) == doctest::Approx(units::ev_to_rad_per_s(lowest_interband_gap(p))));
}

TEST_CASE("parameter validation") {
  RingParams p = default_params();
  p.n_per_ring = 2;
  CHECK_THROWS_AS(validate(p), InvalidParams);
  p = default_params();
  p.half_width = 0.0;
  CHECK_THROWS_AS(validate(p), InvalidParams);
  p = default_params();
  p.decay_rate = -1.0;
  CHECK_THROWS_AS(validate(p), InvalidParams);
  p = default_params();
  p.eps_onsite = 0.5;
  CHECK_THROWS_AS(validate(p), InvalidParams);
  CHECK_NOTHROW(validate(p, true));
  CHECK_THROWS_AS(band_energy(p, {0, Band::Up}), InvalidParams);
}

TEST_CASE("labels and site indexing") {
  const auto labels = all_labels(5);
  REQUIRE(labels.size() == 10);
  CHECK(labels.front() == EigenLabel{0, Band::Down});
  CHECK(labels.back() == EigenLabel{4, Band::Up});
  for (std::size_t i = 0; i < labels.size(); ++i) CHECK(label_index(labels[i], 5) == int(i));
  CHECK(normalized({-1, Band::Up}, 5) == EigenLabel{4, Band::Up});
  CHECK(site_index(2, Ring::B, 5) == 7);
}

TEST_CASE("geometry: radius and site count") {
  const RingParams p = default_params();
  CHECK(p.radius() == doctest::Approx(12 * 0.077e-9 / units::pi));
  const auto sites = site_positions(p);
  CHECK(sites.size() == 24);
  for (const auto& s : sites) CHECK(std::hypot(s.position.x(), s.position.y()) < p.radius() + p.half_width * 1.0001);
  RingParams single = p;
  single.topology = Topology::SingleRing;
  CHECK(basis_dimension(single) == 12);
}

TEST_CASE("jacobi agrees with Eigen on random Hermitian matrices") {
  std::mt19937_64 rng(42);
  for (int n : {1, 2, 3, 7, 16, 24}) {
    const Eigen::MatrixXcd a = random_hermitian(n, rng);
    const auto j = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(a);
    CHECK((j.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, a.norm()));
    CHECK((a * j.vectors - j.vectors * j.values.asDiagonal()).norm() < 1e-11 * std::max(1.0, a.norm()));
    CHECK((j.vectors.adjoint() * j.vectors - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-12);
    for (int i = 1; i < n; ++i) CHECK(j.values(i) >= j.values(i - 1));
  }
}

TEST_CASE("jacobi handles real symmetric input and rejects non-Hermitian") {
  Eigen::Matrix3d a;
  a << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const auto j = jacobi_eigen(a);
  CHECK(j.values(0) == doctest::Approx(2 - std::sqrt(2.0)));
  CHECK(j.values(2) == doctest::Approx(2 + std::sqrt(2.0)));
  Eigen::Matrix2cd b;
  b << 1, 2, 3, 4;
  CHECK_THROWS(jacobi_eigen(b));
}
