#include "mobius/refraction.hpp"

#include "mobius/units.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace mobius {

namespace {

using cd = std::complex<double>;

constexpr double kDegenerateDet = 1e-12;

Handedness handedness_from(const Eigen::Vector2d& s, double k_iy, double k_tz) {
  return k_iy * s[0] + k_tz * s[1] < 0.0 ? Handedness::LH : Handedness::RH;
}

}  // namespace

std::string to_string(Polarization p) { return p == Polarization::Epol ? "E" : "H"; }

std::string to_string(Handedness h) {
  switch (h) {
    case Handedness::LH: return "LH";
    case Handedness::TR: return "TR";
    case Handedness::RH: return "RH";
    case Handedness::Masked: return "masked";
  }
  return "?";
}

std::string to_string(ConicClass c) {
  switch (c) {
    case ConicClass::Circle: return "circle";
    case ConicClass::Hyperbola: return "hyperbola";
    case ConicClass::Degenerate: return "degenerate";
  }
  return "?";
}

double IncidentWave::k0() const { return omega / units::speed_of_light; }
double IncidentWave::k_iy() const { return k0() * std::sin(theta); }

FresnelSystem fresnel_system(const ResponseTensors& t, Polarization pol) {
  const Eigen::Matrix3cd& transverse = pol == Polarization::Epol ? t.eps_r : t.mu_r;
  const Eigen::Matrix3cd& other = pol == Polarization::Epol ? t.mu_r : t.eps_r;
  return {transverse(0, 0), other.block<2, 2>(1, 1)};
}

std::array<cd, 2> fresnel_roots(const FresnelSystem& s, double k0, double k_iy) {
  const cd a = s.block(1, 1);
  const cd b = 2.0 * s.block(0, 1) * k_iy;
  const cd c = s.block(0, 0) * k_iy * k_iy - k0 * k0 * s.xx * s.det();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) == 0.0) return {cd(nan, nan), cd(nan, nan)};
    return {-c / b, cd(nan, nan)};
  }
  const cd sq = std::sqrt(b * b - 4.0 * a * c);
  // Pair the square root with b so that no cancellation occurs, then
  // recover the other root from the product c / a.
  const bool aligned = std::real(std::conj(b) * sq) >= 0.0;
  const cd q = -0.5 * (aligned ? b + sq : b - sq);
  if (std::abs(q) == 0.0) return {cd(0.0), cd(0.0)};
  const cd r_first = q / a;   // (-b - sq)/2a when aligned
  const cd r_second = c / q;  // (-b + sq)/2a when aligned
  // Index 0 carries +sqrt, index 1 carries -sqrt.
  return aligned ? std::array<cd, 2>{r_second, r_first} : std::array<cd, 2>{r_first, r_second};
}

std::array<cd, 2> fresnel_roots_E(const ResponseTensors& t, const IncidentWave& w) {
  if (w.polarization != Polarization::Epol) throw std::invalid_argument("fresnel_roots_E: E-polarized wave required");
  return fresnel_roots(fresnel_system(t, Polarization::Epol), w.k0(), w.k_iy());
}

std::array<cd, 2> fresnel_roots_H(const ResponseTensors& t, const IncidentWave& w) {
  if (w.polarization != Polarization::Hpol) throw std::invalid_argument("fresnel_roots_H: H-polarized wave required");
  return fresnel_roots(fresnel_system(t, Polarization::Hpol), w.k0(), w.k_iy());
}

Eigen::Vector2d poynting(const FresnelSystem& s, double k_iy, cd k_tz) {
  const Eigen::Vector2cd k(k_iy, k_tz);
  const Eigen::Vector2cd v = s.block * k / s.det();
  return v.real();
}

Eigen::Vector2d poynting_E(const ResponseTensors& t, const IncidentWave& w, cd k_tz) {
  return poynting(fresnel_system(t, Polarization::Epol), w.k_iy(), k_tz);
}

Eigen::Vector2d poynting_H(const ResponseTensors& t, const IncidentWave& w, cd k_tz) {
  return poynting(fresnel_system(t, Polarization::Hpol), w.k_iy(), k_tz);
}

RefractionResult classify(const ResponseTensors& t, const IncidentWave& w, double real_tol) {
  RefractionResult r;
  r.wave = w;
  if (t.near_resonance && !t.lossy) {
    r.near_resonance = true;
    r.classification = Handedness::Masked;
    return r;
  }
  const FresnelSystem s = fresnel_system(t, w.polarization);
  const double k0 = w.k0();
  const double ky = w.k_iy();
  r.roots = fresnel_roots(s, k0, ky);
  if (std::abs(s.det()) < kDegenerateDet) {
    r.degenerate = true;
    r.classification = Handedness::TR;
    return r;
  }
  double best_sz = 0.0;
  for (int i = 0; i < 2; ++i) {
    const cd kz = r.roots[static_cast<std::size_t>(i)];
    if (!std::isfinite(kz.real()) || !std::isfinite(kz.imag())) continue;
    const double im = std::abs(kz.imag());
    if (im > real_tol * k0) {
      if (im <= 10.0 * real_tol * k0) r.boundary = true;
      continue;
    }
    const Eigen::Vector2d sv = poynting(s, ky, cd(kz.real(), 0.0));
    if (sv[1] > best_sz) {
      best_sz = sv[1];
      r.chosen = i;
      r.poynting = sv;
    }
  }
  if (!r.chosen) {
    r.classification = Handedness::TR;
    return r;
  }
  r.classification = handedness_from(r.poynting, ky, r.roots[static_cast<std::size_t>(*r.chosen)].real());
  return r;
}

RefractionResult classify_E(const ResponseTensors& t, const IncidentWave& w, double real_tol) {
  if (w.polarization != Polarization::Epol) throw std::invalid_argument("classify_E: E-polarized wave required");
  return classify(t, w, real_tol);
}

RefractionResult classify_H(const ResponseTensors& t, const IncidentWave& w, double real_tol) {
  if (w.polarization != Polarization::Hpol) throw std::invalid_argument("classify_H: H-polarized wave required");
  return classify(t, w, real_tol);
}

std::size_t PhaseDiagram::count(Handedness h) const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), h));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> default_theta_grid() { return linspace(0.0, 89.0 * units::pi / 180.0, 256); }

std::vector<double> default_omega_grid(const MediumConfig& cfg) {
  const double delta = resonance_frequency(cfg);
  double span = 10.0 * bandwidth(cfg);
  if (span <= 0.0) span = 10.0 * std::max(cfg.ring.decay_rate, 1.0);
  return linspace(delta - span, delta + span, 512);
}

namespace {

void require_monotone(const std::vector<double>& g, const char* name) {
  if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
  }
}

}  // namespace

PhaseDiagram phase_diagram(const MediumConfig& cfg, Polarization pol, const std::vector<double>& theta_grid,
                           const std::vector<double>& omega_grid, unsigned threads) {
  require_monotone(theta_grid, "theta");
  require_monotone(omega_grid, "omega");
  if (theta_grid.front() < 0.0 || theta_grid.back() >= units::pi / 2.0) {
    throw std::invalid_argument("theta grid must lie in [0, pi/2)");
  }

  PhaseDiagram pd;
  pd.polarization = pol;
  pd.theta = theta_grid;
  pd.omega = omega_grid;
  pd.cells.assign(theta_grid.size() * omega_grid.size(), Handedness::TR);

  const double b = bandwidth(cfg);
  if (b <= 0.0) {
    pd.warnings.push_back("no negative-mu window: decay rate exceeds 1/tau_c");
  } else if (omega_grid.size() > 1) {
    double spacing = 0.0;
    for (std::size_t i = 1; i < omega_grid.size(); ++i) spacing = std::max(spacing, omega_grid[i] - omega_grid[i - 1]);
    if (spacing > b) {
      std::ostringstream msg;
      msg << "omega spacing " << spacing << " rad/s exceeds the negative-mu bandwidth " << b
          << " rad/s; suggested spacing " << b / 50.0 << " rad/s";
      pd.warnings.push_back(msg.str());
    }
  }

  const std::size_t rows = omega_grid.size();
  unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, rows));
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned tid) {
    try {
      for (std::size_t i = tid; i < rows; i += n_threads) {
        const ResponseTensors t = response_tensors(cfg, omega_grid[i]);
        for (std::size_t j = 0; j < theta_grid.size(); ++j) {
          pd.cells[i * theta_grid.size() + j] = classify(t, {pol, theta_grid[j], omega_grid[i]}).classification;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (n_threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < n_threads; ++tid) pool.emplace_back(work, tid);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return pd;
}

double mixing_angle(double alpha, double beta) {
  return 0.5 * std::atan2(-4.0 * alpha * beta, 4.0 * beta * beta - alpha * alpha);
}

namespace {

struct RealSystem {
  double xx;
  double yy;
  double yz;
  double zz;
  double det;
};

RealSystem real_system(const ResponseTensors& t, Polarization pol) {
  const FresnelSystem s = fresnel_system(t, pol);
  RealSystem r{s.xx.real(), s.block(0, 0).real(), s.block(0, 1).real(), s.block(1, 1).real(), 0.0};
  r.det = r.yy * r.zz - r.yz * r.yz;
  return r;
}

// Quarter discriminant D (zz xx - n_y^2) of the reduced quadratic.
double quarter_disc(const RealSystem& s, double ny) { return s.det * (s.zz * s.xx - ny * ny); }

double branch_nz(const RealSystem& s, double ny, int branch) {
  return (-s.yz * ny + branch * std::sqrt(std::max(0.0, quarter_disc(s, ny)))) / s.zz;
}

SurfacePoint make_point(const RealSystem& s, double ny, int branch) {
  SurfacePoint p;
  p.n_ty = ny;
  p.n_tz = branch_nz(s, ny, branch);
  p.branch = branch;
  const Eigen::Vector2d g(s.yy * p.n_ty + s.yz * p.n_tz, s.yz * p.n_ty + s.zz * p.n_tz);
  p.normal_dir = g.normalized();
  p.poynting = g / s.det;
  p.causal = p.poynting[1] > 0.0;
  return p;
}

}  // namespace

WaveVectorSurface wave_vector_surface(const ResponseTensors& t, Polarization pol, int samples) {
  if (samples < 1) throw std::invalid_argument("wave_vector_surface: samples must be >= 1");
  const RealSystem s = real_system(t, pol);
  WaveVectorSurface out;
  out.mixing_angle = pol == Polarization::Epol ? mixing_angle(t.alpha, t.beta) : mixing_angle(1.0, 1.0);
  if (std::abs(s.det) < kDegenerateDet || std::abs(s.zz) < 1e-14) return out;

  const double p = s.zz * s.xx;
  std::vector<double> ny;
  if (s.det > 0.0) {
    if (p <= 0.0) return out;
    out.conic = ConicClass::Circle;
    const double r = std::sqrt(p);
    for (double u : linspace(-0.45 * units::pi, 0.45 * units::pi, static_cast<std::size_t>(samples))) {
      ny.push_back(r * std::sin(u));
    }
  } else {
    out.conic = ConicClass::Hyperbola;
    const double span = 3.0 * std::max(1.0, std::sqrt(std::abs(p)));
    if (p < 0.0) {
      ny = linspace(-span, span, static_cast<std::size_t>(samples));
    } else {
      const double r = std::sqrt(p);
      const std::size_t half = static_cast<std::size_t>(std::max(1, samples / 2));
      for (double v : linspace(1.02 * r, r + span, half)) {
        ny.push_back(-v);
        ny.push_back(v);
      }
      std::sort(ny.begin(), ny.end());
    }
  }
  for (double y : ny) {
    for (int branch : {1, -1}) out.points.push_back(make_point(s, y, branch));
  }
  return out;
}

double circle_residual(const ResponseTensors& t, const SurfacePoint& p) {
  return std::abs(p.n_ty * p.n_ty + p.n_tz * p.n_tz - (1.0 - t.eta.real()));
}

double hyperbola_residual(const ResponseTensors& t, const SurfacePoint& p) {
  const double phi = mixing_angle(t.alpha, t.beta);
  const double ep = t.eta.real();
  const double nz_r = p.n_tz * std::sin(phi) + p.n_ty * std::cos(phi);
  const double ny_r = p.n_tz * std::cos(phi) - p.n_ty * std::sin(phi);
  return std::abs(nz_r * nz_r / ((1.0 - ep) * t.mu1) - ny_r * ny_r / (ep - 1.0) - 1.0);
}

double dispersion_residual(const ResponseTensors& t, Polarization pol, const SurfacePoint& p) {
  const RealSystem s = real_system(t, pol);
  const double a = s.yy * p.n_ty * p.n_ty;
  const double b = 2.0 * s.yz * p.n_ty * p.n_tz;
  const double c = s.zz * p.n_tz * p.n_tz;
  const double d = s.det * s.xx;
  return std::abs(a + b + c - d) / (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d));
}

double surface_normal_check(const ResponseTensors& t, Polarization pol, const SurfacePoint& p, double h) {
  const RealSystem s = real_system(t, pol);
  const double step = h * std::max(1.0, std::abs(p.n_ty));
  const double lo = p.n_ty - step;
  const double hi = p.n_ty + step;
  if (quarter_disc(s, lo) < 0.0 || quarter_disc(s, hi) < 0.0) {
    throw UnsupportedRegime("surface_normal_check: tangent undefined at the conic apex");
  }
  const Eigen::Vector2d tangent =
      Eigen::Vector2d(2.0 * step, branch_nz(s, hi, p.branch) - branch_nz(s, lo, p.branch)).normalized();
  const Eigen::Vector2d sdir = make_point(s, p.n_ty, p.branch).poynting.normalized();
  return std::abs(sdir.dot(tangent));
}

RefractionResult lossy_normal_incidence(const MediumConfig& cfg, double omega) {
  MediumConfig lossy = cfg;
  lossy.lossy = true;
  const ResponseTensors t = response_tensors(lossy, omega);
  const IncidentWave w{Polarization::Epol, 0.0, omega};
  const FresnelSystem s = fresnel_system(t, Polarization::Epol);
  RefractionResult r;
  r.wave = w;
  r.near_resonance = t.near_resonance;
  r.roots = fresnel_roots(s, w.k0(), 0.0);
  if (std::abs(s.det()) < kDegenerateDet) {
    r.degenerate = true;
    return r;
  }
  for (int i = 0; i < 2; ++i) {
    const cd kz = r.roots[static_cast<std::size_t>(i)];
    if (!std::isfinite(kz.real())) continue;
    const Eigen::Vector2d sv = poynting(s, 0.0, kz);
    if (sv[1] <= 0.0) continue;
    r.chosen = i;
    r.poynting = sv;
  }
  if (!r.chosen) return r;
  const cd kz = r.roots[static_cast<std::size_t>(*r.chosen)];
  const double re_k2 = (kz * kz).real();
  if (std::abs(re_k2) <= 10.0 * kRealTolerance * std::norm(kz)) r.boundary = true;
  if (re_k2 < 0.0) {
    r.chosen.reset();
    r.classification = Handedness::TR;
    return r;
  }
  r.classification = kz.real() * r.poynting[1] < 0.0 ? Handedness::LH : Handedness::RH;
  return r;
}

namespace {

bool is_lh_normal(const MediumConfig& cfg, double omega) {
  if (cfg.lossy) return lossy_normal_incidence(cfg, omega).classification == Handedness::LH;
  const ResponseTensors t = response_tensors(cfg, omega);
  return classify(t, {Polarization::Epol, 0.0, omega}).classification == Handedness::LH;
}

double refine_edge(const MediumConfig& cfg, double outside, double inside) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (outside + inside);
    if (mid == outside || mid == inside) break;
    (is_lh_normal(cfg, mid) ? inside : outside) = mid;
  }
  return 0.5 * (outside + inside);
}

}  // namespace

Window lh_window_normal_incidence(const MediumConfig& cfg, double lo, double hi, int samples) {
  if (!(hi > lo) || samples < 2) throw std::invalid_argument("lh_window_normal_incidence: bad scan range");
  const std::vector<double> grid = linspace(lo, hi, static_cast<std::size_t>(samples));
  std::vector<bool> lh(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) lh[i] = is_lh_normal(cfg, grid[i]);

  std::size_t best_start = 0;
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < grid.size();) {
    if (!lh[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < grid.size() && lh[j]) ++j;
    if (j - i > best_len) {
      best_len = j - i;
      best_start = i;
    }
    i = j;
  }
  Window w;
  if (best_len == 0) return w;
  w.empty = false;
  const std::size_t first = best_start;
  const std::size_t last = best_start + best_len - 1;
  w.lo = first == 0 ? grid[0] : refine_edge(cfg, grid[first - 1], grid[first]);
  w.hi = last + 1 == grid.size() ? grid[last] : refine_edge(cfg, grid[last + 1], grid[last]);
  return w;
}

}  // namespace mobius
