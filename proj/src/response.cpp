#include "mobius/response.hpp"

#include "mobius/dipole.hpp"
#include "mobius/units.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace mobius {

namespace {

using cd = std::complex<double>;
using units::pi;

void require_omega(double omega) {
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be finite and >= 0");
}

double strength(const AlphaBeta& ab) { return ab.alpha * ab.alpha + 4.0 * ab.beta * ab.beta; }

// Zeros of c = eta'(omega) for eta' = A x / (x^2 + gamma^2), x = omega - Delta.
std::pair<double, double> eta_level_crossings(const MediumConfig& cfg, double level) {
  const double a = eta_prefactor(cfg) / level;
  const double g = cfg.ring.decay_rate;
  const double disc = a * a - 4.0 * g * g;
  if (disc < 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const double root = std::sqrt(disc);
  const double delta = resonance_frequency(cfg);
  // Small root via the product x1 x2 = gamma^2 to avoid cancellation.
  const double x2 = 0.5 * (a + root);
  const double x1 = x2 > 0.0 ? g * g / x2 : 0.0;
  return {delta + x1, delta + x2};
}

}  // namespace

double molecular_volume(const MediumConfig& cfg) {
  validate(cfg.ring);
  const double r = cfg.ring.radius();
  const double w = cfg.ring.half_width;
  const double appendix_d = 2.0 * pi * (r + w) * (r + w) * w;
  return cfg.ring.volume_convention == VolumeConvention::AppendixD ? appendix_d : 2.0 * appendix_d;
}

double resonance_frequency(const MediumConfig& cfg) {
  return transition_frequency(cfg.ring, {0, Band::Up});
}

double eta_prefactor(const MediumConfig& cfg) {
  const double e = units::elementary_charge;
  const double w = cfg.ring.half_width;
  return e * e * w * w / (8.0 * units::hbar * units::eps0 * molecular_volume(cfg));
}

EtaValue eta(const MediumConfig& cfg, double omega) {
  require_omega(omega);
  const double x = omega - resonance_frequency(cfg);
  const double g = cfg.ring.decay_rate;
  if (g == 0.0 && x == 0.0) {
    throw UnsupportedRegime("eta: omega on the resonance pole with zero linewidth");
  }
  EtaValue out;
  out.value = eta_prefactor(cfg) / cd(x, g);
  out.near_resonance = std::abs(x) < 1e-3 * g;
  return out;
}

AlphaBeta alpha_beta(const MediumConfig& cfg) {
  validate(cfg.ring);
  const RingParams& p = cfg.ring;
  const double d = p.delta();
  const double hc = units::hbar * units::speed_of_light;
  const double v = units::ev_to_joule(p.v_inter);
  const double xi = units::ev_to_joule(p.xi_intra);
  const double r = p.radius();
  const double s = std::sin(d / 2.0);
  return {r / hc * (v + xi * (std::cos(d) - std::cos(d / 2.0))), 2.0 * r * xi / hc * s * s * std::cos(d / 2.0)};
}

ResponseTensors tensors_for_eta(cd eta_value, double alpha, double beta, bool lossy) {
  ResponseTensors t;
  t.eta = eta_value;
  t.alpha = alpha;
  t.beta = beta;
  t.lossy = lossy;
  const cd e = lossy ? eta_value : cd(eta_value.real(), 0.0);
  t.eps_r = epsilon_from_eta<cd>(e);
  t.mu_r = mu_from_eta<cd>(e, alpha, beta);
  const double ep = eta_value.real();
  t.eps1 = 1.0 - 5.0 * ep;
  t.mu1 = 1.0 - (alpha * alpha + 4.0 * beta * beta) * ep;
  return t;
}

ResponseTensors response_tensors(const MediumConfig& cfg, double omega) {
  const EtaValue e = eta(cfg, omega);
  const AlphaBeta ab = alpha_beta(cfg);
  ResponseTensors t = tensors_for_eta(e.value, ab.alpha, ab.beta, cfg.lossy);
  t.omega = omega;
  t.near_resonance = e.near_resonance;
  return t;
}

Eigen::Matrix3cd epsilon_tensor(const MediumConfig& cfg, double omega) { return response_tensors(cfg, omega).eps_r; }

Eigen::Matrix3cd mu_tensor(const MediumConfig& cfg, double omega) { return response_tensors(cfg, omega).mu_r; }

namespace {

// -(1/hbar) sum' O_{g,k} O_{k,g}^T / (omega - Delta_k + i gamma), the bare
// response of one molecule to a unit field (real part only when lossless).
template <typename ElementFn>
Eigen::Matrix3cd dyad_sum(const MediumConfig& cfg, double omega, ElementFn element) {
  require_omega(omega);
  const RingParams& p = cfg.ring;
  const double g = p.decay_rate;
  Eigen::Matrix3cd sum = Eigen::Matrix3cd::Zero();
  for (const EigenLabel& label : all_labels(p.n_per_ring)) {
    if (label == ground_label) continue;
    const Eigen::Vector3cd o = element(p, ground_label, label).vector;
    const double x = omega - transition_frequency(p, label);
    if (g == 0.0 && x == 0.0) throw UnsupportedRegime("full sum: omega on a pole with zero linewidth");
    sum += (o * o.adjoint()) / cd(x, g);
  }
  sum *= -1.0 / units::hbar;
  if (!cfg.lossy) sum = sum.real().cast<cd>();
  return sum;
}

}  // namespace

Eigen::Matrix3cd full_sum_epsilon(const MediumConfig& cfg, double omega) {
  const double scale = 1.0 / (units::eps0 * molecular_volume(cfg));
  return Eigen::Matrix3cd::Identity() + scale * dyad_sum(cfg, omega, electric_element);
}

Eigen::Matrix3cd full_sum_mu(const MediumConfig& cfg, double omega) {
  const double scale = units::mu0 / molecular_volume(cfg);
  return Eigen::Matrix3cd::Identity() + scale * dyad_sum(cfg, omega, magnetic_element);
}

FullSums full_response_sums(const MediumConfig& cfg, double omega, const Eigen::Vector3cd& e_field,
                            const Eigen::Vector3cd& h_field) {
  const double v0 = molecular_volume(cfg);
  FullSums out;
  out.polarization = dyad_sum(cfg, omega, electric_element) * e_field / v0;
  out.magnetization = units::mu0 * dyad_sum(cfg, omega, magnetic_element) * h_field / v0;
  return out;
}

double bandwidth(const MediumConfig& cfg) {
  const double sa = strength(alpha_beta(cfg)) * eta_prefactor(cfg);
  const double g = cfg.ring.decay_rate;
  const double radicand = sa * sa - 4.0 * g * g;
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

std::pair<double, double> negative_mu_window(const MediumConfig& cfg) {
  return eta_level_crossings(cfg, 1.0 / strength(alpha_beta(cfg)));
}

std::pair<double, double> negative_eps_window(const MediumConfig& cfg) { return eta_level_crossings(cfg, 0.2); }

std::pair<double, double> local_field_negative_eps_window(const MediumConfig& cfg) {
  return eta_level_crossings(cfg, 0.3);
}

double critical_lifetime(const MediumConfig& cfg) {
  return 2.0 / (strength(alpha_beta(cfg)) * eta_prefactor(cfg));
}

Eigen::Matrix3cd local_field_epsilon(const MediumConfig& cfg, double omega) {
  const EtaValue e = eta(cfg, omega);
  const cd v = cfg.lossy ? e.value : cd(e.value.real(), 0.0);
  if (std::abs(3.0 + v) == 0.0 || std::abs(3.0 + 5.0 * v) == 0.0) {
    throw UnsupportedRegime("local_field_epsilon: pole of the corrected permittivity");
  }
  return local_field_epsilon_from_eta<cd>(v);
}

Eigen::Matrix3d molecular_polarizability(const MediumConfig& cfg, double omega) {
  require_omega(omega);
  const RingParams& p = cfg.ring;
  const double delta = resonance_frequency(cfg);
  const double g = p.decay_rate;
  const double x = omega - delta;
  if (g == 0.0 && x == 0.0) throw UnsupportedRegime("molecular_polarizability: pole with zero linewidth");
  Eigen::Matrix3d dyads = Eigen::Matrix3d::Zero();
  for (const EigenLabel& label : all_labels(p.n_per_ring)) {
    if (label == ground_label) continue;
    if (std::abs(transition_frequency(p, label) - delta) > 1e-9 * delta) continue;
    const Eigen::Vector3cd d = electric_element(p, ground_label, label).vector;
    dyads += (d * d.adjoint()).real();
  }
  return -dyads * (x / (x * x + g * g)) / (units::hbar * units::eps0);
}

Eigen::Matrix3d clausius_mossotti_epsilon(const Eigen::Matrix3d& gamma_mol, double volume) {
  const Eigen::Matrix3d chi0 = gamma_mol / volume;
  const Eigen::Matrix3d lhs = Eigen::Matrix3d::Identity() - chi0 / 3.0;
  return Eigen::Matrix3d::Identity() + lhs.inverse() * chi0;
}

}  // namespace mobius
