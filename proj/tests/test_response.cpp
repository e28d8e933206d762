#include "mobius/response.hpp"
#include "mobius/units.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace mobius;
using units::pi;

namespace {

MediumConfig medium(VolumeConvention v = VolumeConvention::Cylinder4W) {
  MediumConfig m;
  m.ring.volume_convention = v;
  return m;
}

Eigen::Vector3d principal(const Eigen::Matrix3d& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("molecular volume conventions differ by two") {
  const double r = default_params().radius();
  const double w = default_params().half_width;
  CHECK(molecular_volume(medium(VolumeConvention::AppendixD)) == doctest::Approx(2 * pi * (r + w) * (r + w) * w));
  CHECK(molecular_volume(medium()) == doctest::Approx(4 * pi * (r + w) * (r + w) * w));
}

TEST_CASE("eta prefactor and value") {
  const MediumConfig m = medium();
  const double w = m.ring.half_width;
  const double e = units::elementary_charge;
  const double a = e * e * w * w / (8 * units::hbar * units::eps0 * molecular_volume(m));
  CHECK(eta_prefactor(m) == doctest::Approx(a).epsilon(1e-13));
  const double d = resonance_frequency(m);
  CHECK(units::rad_per_s_to_ev(d) == doctest::Approx(7.4453).epsilon(1e-5));
  const double g = m.ring.decay_rate;
  const auto v = eta(m, d + g).value;
  CHECK(v.real() == doctest::Approx(a / (2 * g)));
  CHECK(v.imag() == doctest::Approx(-a / (2 * g)));
  CHECK(eta(m, d).near_resonance);
  CHECK_FALSE(eta(m, d + g).near_resonance);
}

TEST_CASE("eta on the pole without linewidth is unsupported") {
  MediumConfig m = medium();
  m.ring.decay_rate = 0.0;
  CHECK_THROWS_AS(eta(m, resonance_frequency(m)), UnsupportedRegime);
  CHECK_NOTHROW(eta(m, resonance_frequency(m) * (1 + 1e-9)));
}

TEST_CASE("alpha and beta") {
  const MediumConfig m = medium();
  const RingParams& p = m.ring;
  const double d = p.delta();
  const double k = p.radius() / (units::hbar * units::speed_of_light);
  const double alpha = k * units::ev_to_joule(p.v_inter + p.xi_intra * (std::cos(d) - std::cos(d / 2)));
  const double beta = 2 * k * units::ev_to_joule(p.xi_intra) * std::pow(std::sin(d / 2), 2) * std::cos(d / 2);
  CHECK(alpha_beta(m).alpha == doctest::Approx(alpha).epsilon(1e-13));
  CHECK(alpha_beta(m).beta == doctest::Approx(beta).epsilon(1e-13));
}

TEST_CASE("principal values of the tensors: 1, 1 - eta', 1 - 5 eta' and 1, 1 - a^2 eta', 1 - s eta'") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const double e = u(rng);
    const double a = 0.02 * u(rng);
    const double b = 0.01 * u(rng);
    Eigen::Vector3d pe = principal(epsilon_from_eta<double>(e));
    Eigen::Vector3d want(1.0, 1.0 - e, 1.0 - 5 * e);
    std::sort(want.data(), want.data() + 3);
    CHECK((pe - want).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::Vector3d pm = principal(mu_from_eta<double>(e, a, b));
    Eigen::Vector3d wm(1.0, 1.0 - a * a * e, 1.0 - (a * a + 4 * b * b) * e);
    std::sort(wm.data(), wm.data() + 3);
    CHECK((pm - wm).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("response tensors: lossless keeps eta', lossy keeps eta") {
  MediumConfig m = medium();
  const double w = resonance_frequency(m) + 1e9;
  const ResponseTensors r = response_tensors(m, w);
  CHECK(r.eps_r.imag().norm() == 0.0);
  CHECK(r.eps1 == doctest::Approx(1 - 5 * r.eta.real()));
  const AlphaBeta ab = alpha_beta(m);
  CHECK(r.mu1 == doctest::Approx(1 - (ab.alpha * ab.alpha + 4 * ab.beta * ab.beta) * r.eta.real()));
  m.lossy = true;
  const ResponseTensors l = response_tensors(m, w);
  CHECK(l.eps_r(0, 0).imag() == doctest::Approx(-l.eta.imag()));
  CHECK(l.eta.imag() < 0.0);
}

TEST_CASE("full Green-Kubo sums track the resonant closed form") {
  for (bool lossy : {false, true}) {
    MediumConfig m = medium();
    m.lossy = lossy;
    const auto [lo, hi] = negative_mu_window(m);
    const double d = resonance_frequency(m);
    for (double w : {d - 5e9, lo, 0.5 * (lo + hi), hi, d + 1e10}) {
      const Eigen::Matrix3cd ce = epsilon_tensor(m, w);
      const Eigen::Matrix3cd cm = mu_tensor(m, w);
      const double chi_e = (ce - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff();
      const double de = (full_sum_epsilon(m, w) - ce).cwiseAbs().maxCoeff();
      const double dm = (full_sum_mu(m, w) - cm).cwiseAbs().maxCoeff();
      // remaining difference is the off-resonant background of the other transitions
      CHECK(de < 1e-4 * chi_e);
      CHECK(de < 1.0);
      CHECK(dm < 1e-5);
    }
  }
}

TEST_CASE("bandwidth: closed form, numeric zeros and critical lifetime") {
  for (VolumeConvention v : {VolumeConvention::AppendixD, VolumeConvention::Cylinder4W}) {
    const MediumConfig m = medium(v);
    const AlphaBeta ab = alpha_beta(m);
    const double s = ab.alpha * ab.alpha + 4 * ab.beta * ab.beta;
    const double sa = s * eta_prefactor(m);
    const double g = m.ring.decay_rate;
    CHECK(bandwidth(m) == doctest::Approx(std::sqrt(sa * sa - 4 * g * g)).epsilon(1e-13));
    const auto [lo, hi] = negative_mu_window(m);
    CHECK(hi - lo == doctest::Approx(bandwidth(m)).epsilon(1e-9));
    // mu1 is steep at the lower zero (x ~ gamma^2 / B); compare in frequency instead
    const double d = resonance_frequency(m);
    const double x1 = g * g / (hi - d);
    CHECK(lo - d == doctest::Approx(x1).epsilon(1e-6));
    CHECK(std::abs(response_tensors(m, hi).mu1) < 1e-9);
    CHECK(response_tensors(m, 0.5 * (lo + hi)).mu1 < 0.0);
    CHECK(response_tensors(m, lo - 0.01 * (hi - lo)).mu1 > 0.0);
    CHECK(response_tensors(m, hi + 0.01 * (hi - lo)).mu1 > 0.0);
    CHECK(critical_lifetime(m) == doctest::Approx(2.0 / sa));
  }
  CHECK(critical_lifetime(medium()) / units::ns == doctest::Approx(0.51).epsilon(0.05));
  CHECK(critical_lifetime(medium(VolumeConvention::AppendixD)) / units::ns == doctest::Approx(0.26).epsilon(0.05));
  CHECK(bandwidth(medium(VolumeConvention::AppendixD)) == doctest::Approx(7.71e9).epsilon(0.01));
}

TEST_CASE("no negative-mu window once the lifetime drops below tau_c") {
  MediumConfig m = medium();
  m.ring.decay_rate = 1.01 / critical_lifetime(m);
  CHECK(bandwidth(m) == 0.0);
  CHECK(std::isnan(negative_mu_window(m).first));
  m.ring.decay_rate = 0.99 / critical_lifetime(m);
  CHECK(bandwidth(m) > 0.0);
}

TEST_CASE("window ordering: mu window inside eps window inside corrected eps window") {
  const MediumConfig m = medium();
  const auto [mlo, mhi] = negative_mu_window(m);
  const auto [elo, ehi] = negative_eps_window(m);
  const auto [llo, lhi] = local_field_negative_eps_window(m);
  CHECK(elo < mlo);
  CHECK(mhi < ehi);
  CHECK(elo < llo);
  CHECK(lhi < ehi);
  CHECK(llo < mlo);
  CHECK(mhi < lhi);
}

TEST_CASE("local-field corrected permittivity") {
  const Eigen::Vector3d at = principal(local_field_epsilon_from_eta<double>(0.3));
  CHECK(std::abs(at(0)) < 1e-14);
  CHECK(principal(local_field_epsilon_from_eta<double>(0.29))(0) > 0.0);
  CHECK(principal(local_field_epsilon_from_eta<double>(0.31))(0) < 0.0);
  CHECK(local_field_epsilon_from_eta<double>(1e-9).isApprox(epsilon_from_eta<double>(1e-9), 1e-8));

  const MediumConfig m = medium();
  const auto [lo, hi] = negative_mu_window(m);
  for (double w : {lo, 0.5 * (lo + hi), hi, resonance_frequency(m) - 3e9}) {
    const Eigen::Matrix3d lf = local_field_epsilon(m, w).real();
    const Eigen::Matrix3d cm = clausius_mossotti_epsilon(molecular_polarizability(m, w), molecular_volume(m));
    CHECK((lf - cm).cwiseAbs().maxCoeff() < 1e-9 * lf.cwiseAbs().maxCoeff());
  }
}
