#pragma once

#include "mobius/response.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace mobius {

enum class Polarization { Epol, Hpol };

/// Cell encoding used in tables: LH = -1, TR = 0, RH = +1, Masked = 2.
enum class Handedness : int { LH = -1, TR = 0, RH = 1, Masked = 2 };

std::string to_string(Polarization p);
std::string to_string(Handedness h);

struct IncidentWave {
  Polarization polarization = Polarization::Epol;
  double theta = 0.0;  // rad, [0, pi/2)
  double omega = 0.0;  // rad/s

  double k0() const;   // omega / c
  double k_iy() const; // k0 sin theta
};

/// Realness tolerance on Im k_tz, relative to |k_i|.
inline constexpr double kRealTolerance = 1e-9;

/// Coefficients of the x-decoupled Fresnel problem. For Epol `xx` is eps_xx
/// and `block` the yz block of mu; for Hpol the roles are swapped.
struct FresnelSystem {
  std::complex<double> xx;
  Eigen::Matrix2cd block;

  std::complex<double> det() const { return block.determinant(); }
};

FresnelSystem fresnel_system(const ResponseTensors& t, Polarization pol);

struct RefractionResult {
  IncidentWave wave;
  std::array<std::complex<double>, 2> roots{};  // k_tz, rad/m
  std::optional<int> chosen;                    // causal propagating branch
  Eigen::Vector2d poynting = Eigen::Vector2d::Zero();  // (S_ty, S_tz) of the chosen branch
  Handedness classification = Handedness::TR;
  bool degenerate = false;      // det of the block (mu1 or eps1) vanishes
  bool near_resonance = false;  // masked bin
  bool boundary = false;        // |Im k_tz| within 10x the realness tolerance
};

/// Roots of block_zz k_z^2 + 2 block_yz k_y k_z + (block_yy k_y^2 - k0^2 xx det) = 0.
/// When the leading coefficient vanishes the second root is NaN.
std::array<std::complex<double>, 2> fresnel_roots(const FresnelSystem& s, double k0, double k_iy);

std::array<std::complex<double>, 2> fresnel_roots_E(const ResponseTensors& t, const IncidentWave& w);
std::array<std::complex<double>, 2> fresnel_roots_H(const ResponseTensors& t, const IncidentWave& w);

/// (S_ty, S_tz) with the positive prefactor dropped: Re[(block (k_y, k_z)) / det].
Eigen::Vector2d poynting(const FresnelSystem& s, double k_iy, std::complex<double> k_tz);
Eigen::Vector2d poynting_E(const ResponseTensors& t, const IncidentWave& w, std::complex<double> k_tz);
Eigen::Vector2d poynting_H(const ResponseTensors& t, const IncidentWave& w, std::complex<double> k_tz);

/// Criteria: real k_tz, S_tz > 0 on the chosen branch, then LH iff k_t . S_t < 0.
RefractionResult classify(const ResponseTensors& t, const IncidentWave& w, double real_tol = kRealTolerance);
RefractionResult classify_E(const ResponseTensors& t, const IncidentWave& w, double real_tol = kRealTolerance);
RefractionResult classify_H(const ResponseTensors& t, const IncidentWave& w, double real_tol = kRealTolerance);

struct PhaseDiagram {
  Polarization polarization = Polarization::Epol;
  std::vector<double> theta;  // rad
  std::vector<double> omega;  // rad/s
  std::vector<Handedness> cells;  // row-major [omega][theta]
  std::vector<std::string> warnings;

  Handedness at(std::size_t i_omega, std::size_t i_theta) const { return cells[i_omega * theta.size() + i_theta]; }
  std::size_t count(Handedness h) const;
};

/// Classification over theta x omega; parallel over omega rows, deterministic.
PhaseDiagram phase_diagram(const MediumConfig& cfg, Polarization pol, const std::vector<double>& theta_grid,
                           const std::vector<double>& omega_grid, unsigned threads = 0);

std::vector<double> linspace(double a, double b, std::size_t n);

/// theta in [0, 89 deg] x 256.
std::vector<double> default_theta_grid();
/// Delta_{0,Up} +- 10 B x 512.
std::vector<double> default_omega_grid(const MediumConfig& cfg);

enum class ConicClass { Circle, Hyperbola, Degenerate };
std::string to_string(ConicClass c);

struct SurfacePoint {
  double n_ty = 0.0;
  double n_tz = 0.0;
  int branch = 0;             // sign of the square root in the n_tz formula (+1 / -1)
  Eigen::Vector2d normal_dir; // unit gradient of the dispersion relation
  Eigen::Vector2d poynting;   // (S_ty, S_tz), unnormalized
  bool causal = false;        // S_tz > 0
};

struct WaveVectorSurface {
  ConicClass conic = ConicClass::Degenerate;
  std::vector<SurfacePoint> points;
  double mixing_angle = 0.0;  // rad
};

/// Mixing angle that removes the cross term of the mu block:
/// phi = atan2(-4 alpha beta, 4 beta^2 - alpha^2) / 2 (the eigen-1 direction (2 beta, -alpha)).
double mixing_angle(double alpha, double beta);

/// Samples of the reduced wave-vector surface n = k / k0 over `samples` values
/// of n_ty, both branches. Lossless tensors only (imaginary parts ignored).
WaveVectorSurface wave_vector_surface(const ResponseTensors& t, Polarization pol, int samples);

/// |n_ty^2 + n_tz^2 - (1 - eta')|.
double circle_residual(const ResponseTensors& t, const SurfacePoint& p);
/// E-polarized hyperbola: |n~_tz^2 / ((1 - eta') mu1) - n~_ty^2 / (eta' - 1) - 1| in the rotated frame.
double hyperbola_residual(const ResponseTensors& t, const SurfacePoint& p);
/// Residual of the Fresnel determinant at the point, relative to its terms.
double dispersion_residual(const ResponseTensors& t, Polarization pol, const SurfacePoint& p);

/// |S^ . t^| with t^ a central-difference unit tangent (step h) along the same
/// branch. Throws UnsupportedRegime when the step leaves the real surface.
double surface_normal_check(const ResponseTensors& t, Polarization pol, const SurfacePoint& p, double h = 1e-6);

/// Normal incidence with complex eta. Causal root has S_tz > 0; propagating
/// when Re(k_tz^2) >= 0; LH when Re(k_tz) S_tz < 0.
RefractionResult lossy_normal_incidence(const MediumConfig& cfg, double omega);

struct Window {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return empty ? 0.0 : hi - lo; }
};

/// Largest contiguous LH interval at theta = 0 for the given mode (lossy uses
/// lossy_normal_incidence, lossless uses classify_E), scanned over
/// [lo, hi] with `samples` points and refined by bisection.
Window lh_window_normal_incidence(const MediumConfig& cfg, double lo, double hi, int samples = 4001);

}  // namespace mobius
