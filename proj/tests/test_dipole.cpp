#include "mobius/dipole.hpp"
#include "mobius/oracle.hpp"
#include "mobius/units.hpp"

#include <doctest.h>

#include <cmath>

using namespace mobius;

TEST_CASE("analytic elements are Hermitian: <a|O|b> = conj <b|O|a>") {
  for (int n : {3, 4, 5, 12}) {
    RingParams p = default_params();
    p.n_per_ring = n;
    const auto labels = all_labels(n);
    for (const auto& a : labels) {
      for (const auto& b : labels) {
        const auto dab = electric_element(p, a, b).vector;
        const auto dba = electric_element(p, b, a).vector;
        CHECK((dab - dba.conjugate()).norm() <= 1e-14 * electric_scale(p));
        const auto mab = magnetic_element(p, a, b).vector;
        const auto mba = magnetic_element(p, b, a).vector;
        CHECK((mab - mba.conjugate()).norm() <= 1e-14 * magnetic_scale(p));
      }
    }
  }
}

TEST_CASE("inter-band nonzero components lie inside the selection rules") {
  for (int n : {5, 12, 24}) {
    RingParams p = default_params();
    p.n_per_ring = n;
    for (const auto& down : all_labels(n)) {
      if (down.band != Band::Down) continue;
      for (int l = 0; l < n; ++l) {
        const EigenLabel up{l, Band::Up};
        const PolarizationSet de = nonzero_components(electric_element(p, down, up).vector, electric_scale(p));
        const PolarizationSet dm = nonzero_components(magnetic_element(p, down, up).vector, magnetic_scale(p));
        CHECK((de | electric_selection(down, up, n)) == electric_selection(down, up, n));
        CHECK((dm | magnetic_selection(down, up, n)) == magnetic_selection(down, up, n));
      }
    }
  }
}

TEST_CASE("the resonant transition couples to every polarization") {
  const RingParams p = default_params();
  const EigenLabel g{0, Band::Down};
  CHECK(nonzero_components(electric_element(p, g, {0, Band::Up}).vector, electric_scale(p)) == kXYZ);
  CHECK(nonzero_components(magnetic_element(p, g, {0, Band::Up}).vector, magnetic_scale(p)) == kXYZ);
  CHECK(nonzero_components(electric_element(p, g, {1, Band::Up}).vector, electric_scale(p)) == kXYZ);
  CHECK(nonzero_components(electric_element(p, g, {11, Band::Up}).vector, electric_scale(p)) == kXY);
  CHECK(nonzero_components(electric_element(p, g, {5, Band::Up}).vector, electric_scale(p)).empty());
  CHECK(electric_selection(g, {2, Band::Up}, 12) == kXY);
  CHECK(magnetic_selection(g, {1, Band::Down}, 12).empty());
}

TEST_CASE("electric block values at dl = 0") {
  const RingParams p = default_params();
  const auto b = electric_block(p, 0.3, 0);
  const double s = units::elementary_charge * p.half_width / 4.0;
  // -eW/4 [(ey + 2 ez) sigma_x - ex sigma_y], rows/cols (Up, Down)
  const auto up = int(Band::Up);
  const auto dn = int(Band::Down);
  CHECK(std::abs(b[up][dn](1) + s) < 1e-40);
  CHECK(std::abs(b[up][dn](2) + 2 * s) < 1e-40);
  CHECK(std::abs(b[up][dn](0) - std::complex<double>(0, -s)) < 1e-40);
  CHECK(b[up][up].norm() == 0.0);
  CHECK_THROWS_AS(electric_block(p, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(magnetic_block(p, 0.0, -3), std::invalid_argument);
}

TEST_CASE("natural scales") {
  const RingParams p = default_params();
  CHECK(electric_scale(p) == doctest::Approx(units::elementary_charge * p.half_width));
  CHECK(magnetic_scale(p) == doctest::Approx(units::elementary_charge * units::ev_to_joule(p.xi_intra) * p.radius() *
                                             p.half_width / units::hbar));
}

TEST_CASE("analytic elements need the Mobius topology") {
  RingParams p = default_params();
  p.topology = Topology::DoubleRingPeriodic;
  CHECK_THROWS_AS(electric_element(p, {0, Band::Down}, {0, Band::Up}), InvalidParams);
}

TEST_CASE("polarization set text") {
  CHECK(to_string(kXYZ) == "xyz");
  CHECK(to_string(kXY) == "xy");
  CHECK(to_string(kZ) == "z");
  CHECK(to_string(PolarizationSet{}) == "none");
}
