#pragma once

#include "mobius/model.hpp"

#include <Eigen/Core>

#include <complex>
#include <utility>

namespace mobius {

struct MediumConfig {
  RingParams ring;
  bool lossy = false;  // keep complex eta instead of its real part
};

/// Volume per molecule, m^3. AppendixD: 2 pi (R+W)^2 W. Cylinder4W: pi (R+W)^2 (4W).
double molecular_volume(const MediumConfig& cfg);

/// Delta_{0,Up} in rad/s, the pole of eta.
double resonance_frequency(const MediumConfig& cfg);

/// e^2 W^2 / (8 hbar eps0 v0), rad/s.
double eta_prefactor(const MediumConfig& cfg);

struct EtaValue {
  std::complex<double> value;
  bool near_resonance = false;  // |omega - Delta| < 1e-3 gamma
};

/// eta(omega) = A / (omega - Delta_{0,Up} + i gamma). Throws UnsupportedRegime
/// when gamma = 0 and omega sits exactly on the pole.
EtaValue eta(const MediumConfig& cfg, double omega);

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

AlphaBeta alpha_beta(const MediumConfig& cfg);

/// Relative permittivity for a given eta (real eta' or complex eta).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> epsilon_from_eta(Scalar e) {
  Eigen::Matrix<Scalar, 3, 3> m;
  m << Scalar(1) - e, Scalar(0), Scalar(0),
       Scalar(0), Scalar(1) - e, Scalar(-2) * e,
       Scalar(0), Scalar(-2) * e, Scalar(1) - Scalar(4) * e;
  return m;
}

/// Relative permeability for a given eta.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> mu_from_eta(Scalar e, double alpha, double beta) {
  const Scalar a2 = Scalar(alpha * alpha) * e;
  const Scalar ab = Scalar(2 * alpha * beta) * e;
  const Scalar b2 = Scalar(4 * beta * beta) * e;
  Eigen::Matrix<Scalar, 3, 3> m;
  m << Scalar(1) - a2, Scalar(0), Scalar(0),
       Scalar(0), Scalar(1) - a2, -ab,
       Scalar(0), -ab, Scalar(1) - b2;
  return m;
}

/// Local-field corrected permittivity as a function of eta.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> local_field_epsilon_from_eta(Scalar e) {
  const Scalar d1 = Scalar(3) + e;
  const Scalar d5 = Scalar(3) + Scalar(5) * e;
  Eigen::Matrix<Scalar, 3, 3> m;
  m << (Scalar(3) - Scalar(2) * e) / d1, Scalar(0), Scalar(0),
       Scalar(0), (Scalar(3) + Scalar(2) * e) / d5, Scalar(-6) * e / d5,
       Scalar(0), Scalar(-6) * e / d5, (Scalar(3) - Scalar(7) * e) / d5;
  return m;
}

struct ResponseTensors {
  double omega = 0.0;
  std::complex<double> eta;
  Eigen::Matrix3cd eps_r;
  Eigen::Matrix3cd mu_r;
  double alpha = 0.0;
  double beta = 0.0;
  double eps1 = 1.0;  // 1 - 5 eta'
  double mu1 = 1.0;   // 1 - (alpha^2 + 4 beta^2) eta'
  bool lossy = false;
  bool near_resonance = false;
};

/// Tensors built from eta' (lossless) or eta (lossy).
ResponseTensors response_tensors(const MediumConfig& cfg, double omega);

/// Tensors for an externally chosen eta; used for synthetic media and sweeps over eta'.
ResponseTensors tensors_for_eta(std::complex<double> eta_value, double alpha, double beta, bool lossy);

Eigen::Matrix3cd epsilon_tensor(const MediumConfig& cfg, double omega);
Eigen::Matrix3cd mu_tensor(const MediumConfig& cfg, double omega);

/// Green-Kubo sums over every excited state, using the analytic dipole tables.
/// P in C/m^2 for E in V/m; M in A/m for H in A/m (B = mu0 H in the coupling).
struct FullSums {
  Eigen::Vector3cd polarization;
  Eigen::Vector3cd magnetization;
};

FullSums full_response_sums(const MediumConfig& cfg, double omega, const Eigen::Vector3cd& e_field,
                            const Eigen::Vector3cd& h_field);

/// eps_r and mu_r implied by the full sums (columns are the responses to unit fields).
Eigen::Matrix3cd full_sum_epsilon(const MediumConfig& cfg, double omega);
Eigen::Matrix3cd full_sum_mu(const MediumConfig& cfg, double omega);

/// Width of the mu1 < 0 window: Re sqrt((s A)^2 - 4 gamma^2), s = alpha^2 + 4 beta^2.
double bandwidth(const MediumConfig& cfg);

/// Closed-form zeros of mu1(omega), rad/s; empty pair (NaN) when the window is absent.
std::pair<double, double> negative_mu_window(const MediumConfig& cfg);

/// Zeros of eps1(omega) (5 eta' = 1), rad/s.
std::pair<double, double> negative_eps_window(const MediumConfig& cfg);

/// Zeros of the corrected principal value (10 eta' = 3), rad/s.
std::pair<double, double> local_field_negative_eps_window(const MediumConfig& cfg);

/// 2 / (s A) = 16 eps0 v0 hbar / (e^2 s W^2), seconds.
double critical_lifetime(const MediumConfig& cfg);

/// Permittivity with the Lorentz local-field correction. Throws
/// UnsupportedRegime on the poles 3 + eta' = 0 or 3 + 5 eta' = 0.
Eigen::Matrix3cd local_field_epsilon(const MediumConfig& cfg, double omega);

/// Molecular polarizability gamma_mol (m^3) from the resonant dyads:
/// -(1/(hbar eps0)) sum d d^dagger (omega - Delta) / ((omega - Delta)^2 + gamma^2)
/// over the manifold degenerate with Delta_{0,Up}.
Eigen::Matrix3d molecular_polarizability(const MediumConfig& cfg, double omega);

/// eps = 1 + (1 - g/(3 v0))^{-1} g / v0.
Eigen::Matrix3d clausius_mossotti_epsilon(const Eigen::Matrix3d& gamma_mol, double volume);

}  // namespace mobius
