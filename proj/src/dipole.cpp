#include "mobius/dipole.hpp"

#include "mobius/units.hpp"

#include <cmath>
#include <complex>

namespace mobius {

namespace {

using cd = std::complex<double>;
using Eigen::Vector3cd;
using Mat2 = Eigen::Matrix2cd;

constexpr cd I{0.0, 1.0};

const Vector3cd ex{1.0, 0.0, 0.0};
const Vector3cd ey{0.0, 1.0, 0.0};
const Vector3cd ez{0.0, 0.0, 1.0};

constexpr int kUp = static_cast<int>(Band::Up);
constexpr int kDown = static_cast<int>(Band::Down);

// Pauli matrices in the (Up, Down) row/column order.
Mat2 sigma_x() { return (Mat2() << 0, 1, 1, 0).finished(); }
Mat2 sigma_y() { return (Mat2() << 0, -I, I, 0).finished(); }
Mat2 sigma_plus() { return (Mat2() << 0, 1, 0, 0).finished(); }
Mat2 sigma_minus() { return (Mat2() << 0, 0, 1, 0).finished(); }

PseudoSpinBlock zero_block() {
  PseudoSpinBlock b;
  for (auto& row : b) row.fill(Vector3cd::Zero());
  return b;
}

// Accumulates vec (x) mat into the block, translating (Up, Down) matrix
// order to Band indexing.
void add_outer(PseudoSpinBlock& b, const Vector3cd& vec, const Mat2& mat) {
  const int order[2] = {kUp, kDown};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) b[order[r]][order[c]] += mat(r, c) * vec;
  }
}

void require_dl(int dl) {
  if (dl < -2 || dl > 2) throw std::invalid_argument("pseudo-spin blocks exist only for |dl| <= 2");
}

template <typename BlockFn>
TransitionElement element_from_blocks(const RingParams& p, const EigenLabel& from, const EigenLabel& to,
                                      DipoleKind kind, BlockFn block) {
  validate(p);
  if (p.topology != Topology::Mobius) {
    throw InvalidParams("analytic dipole elements exist only for the Mobius topology");
  }
  const int n = p.n_per_ring;
  const EigenLabel a = normalized(from, n);
  const EigenLabel b = normalized(to, n);
  const double k = a.l * p.delta();
  TransitionElement out{a, b, kind, Vector3cd::Zero()};
  for (int dl = -2; dl <= 2; ++dl) {
    if (((a.l + dl - b.l) % n + n) % n != 0) continue;
    out.vector += block(p, k, dl)[static_cast<int>(a.band)][static_cast<int>(b.band)];
  }
  return out;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

std::string to_string(PolarizationSet s) {
  if (s.empty()) return "none";
  std::string out;
  if (s.x) out += "x";
  if (s.y) out += "y";
  if (s.z) out += "z";
  return out;
}

PolarizationSet nonzero_components(const Vector3cd& v, double scale, double rel_tol) {
  const double tol = rel_tol * scale;
  return {std::abs(v.x()) > tol, std::abs(v.y()) > tol, std::abs(v.z()) > tol};
}

double electric_scale(const RingParams& p) { return units::elementary_charge * p.half_width; }

double magnetic_scale(const RingParams& p) {
  return units::elementary_charge * units::ev_to_joule(p.xi_intra) * p.radius() * p.half_width /
         units::hbar;
}

PseudoSpinBlock electric_block(const RingParams& p, double k, int dl) {
  (void)k;
  require_dl(dl);
  const double e = units::elementary_charge;
  const double w = p.half_width;
  const double r = p.radius();
  PseudoSpinBlock b = zero_block();
  const Mat2 id = Mat2::Identity();
  if (dl == 0) {
    add_outer(b, -e * w / 4.0 * (ey + 2.0 * ez), sigma_x());
    add_outer(b, e * w / 4.0 * ex, sigma_y());
  } else if (std::abs(dl) == 1) {
    const double s = dl > 0 ? 1.0 : -1.0;
    const Mat2 ladder = dl > 0 ? sigma_minus() : sigma_plus();
    add_outer(b, -e / 4.0 * (ex - s * I * ey), 2.0 * r * id + w * sigma_y());
    add_outer(b, -e / 4.0 * 2.0 * w * ez, ladder);
  } else {
    const double s = dl > 0 ? 1.0 : -1.0;
    const Mat2 ladder = dl > 0 ? sigma_minus() : sigma_plus();
    add_outer(b, -e * w / 4.0 * (-s * I * ex - ey), ladder);
  }
  return b;
}

PseudoSpinBlock magnetic_block(const RingParams& p, double k, int dl) {
  require_dl(dl);
  const double d = p.delta();
  const double v = units::ev_to_joule(p.v_inter);
  const double xi = units::ev_to_joule(p.xi_intra);
  const double r = p.radius();
  const double w = p.half_width;
  const double w2 = w * w;
  const double rw = r * w;
  auto c = [](double x) { return std::cos(x); };

  Vector3cd uu = Vector3cd::Zero();
  Vector3cd ud = Vector3cd::Zero();
  Vector3cd du = Vector3cd::Zero();
  Vector3cd dd = Vector3cd::Zero();

  switch (dl) {
    case 0: {
      uu = -xi / 8.0 *
           (2.0 * w2 * (c(k - d) - c(k)) * ey +
            (w2 * (c(k) - c(k - 2 * d) - c(k - d) + c(k + d)) + 4.0 * r * r * (c(k + d / 2) - c(k - 1.5 * d))) * ez);
      const double a = v + xi * (c(k - d) - c(k + d / 2));
      const double zc = 2.0 * xi * c(d / 4) * (c(k - 1.25 * d) - c(k + 0.75 * d));
      ud = rw / 4.0 * (-a * (ex - I * ey) - I * zc * ez);
      du = rw / 4.0 * (-a * (ex + I * ey) + I * zc * ez);
      dd = -xi / 2.0 * std::sin(k) *
           (w2 * std::sin(d / 2) * ey - (2.0 * r * r + w2 * c(d / 2)) * std::sin(d) * ez);
      break;
    }
    case 1: {
      const Vector3cd t = I * ex + ey - ez;
      uu = w2 * xi / 8.0 * (c(k - d) - c(k + d)) * t;
      ud = -rw / 4.0 * (v + xi * (c(k) - c(k + d / 2))) * (ex - I * ey);
      du = rw / 4.0 *
           ((v + xi * (c(k + d) - c(k - d / 2))) * (ex - I * ey) -
            I * xi * (c(k - d) - c(k + d) - c(k + 1.5 * d) + c(k - d / 2)) * ez);
      dd = w2 * xi / 8.0 * (c(k - d / 2) - c(k + 1.5 * d)) * t;
      break;
    }
    case -1: {
      uu = -w2 * xi / 8.0 * (c(k - 2 * d) - c(k)) * (I * ex - ey + ez);
      ud = rw / 4.0 *
           ((v + xi * (c(k) - c(k - 1.5 * d))) * (ex + I * ey) +
            I * xi * (c(k - 1.5 * d) + c(k - 2 * d) - c(k) - c(k + d / 2)) * ez);
      du = -rw / 4.0 * (v + xi * (c(k - d) - c(k - d / 2))) * (ex + I * ey);
      dd = w2 * xi / 8.0 * (c(k - 1.5 * d) - c(k + d / 2)) * (-I * ex + ey - ez);
      break;
    }
    case 2: {
      uu = I / 8.0 * w2 * xi * (c(k) - c(k + d)) * (ex - I * ey);
      du = rw / 4.0 * (v + xi * (c(k + d) - c(k + d / 2))) * (ex - I * ey);
      dd = I / 8.0 * w2 * xi * (c(k + d / 2) - c(k + 1.5 * d)) * (ex - I * ey);
      break;
    }
    case -2: {
      uu = -I / 8.0 * w2 * xi * (c(k - 2 * d) - c(k - d)) * (ex + I * ey);
      ud = rw / 4.0 * (v + xi * (c(k - d) - c(k - 1.5 * d))) * (ex + I * ey);
      dd = -I / 8.0 * w2 * xi * (c(k - 1.5 * d) - c(k - d / 2)) * (ex + I * ey);
      break;
    }
    default: break;
  }

  const double scale = units::elementary_charge / units::hbar;
  PseudoSpinBlock b;
  b[kUp][kUp] = scale * uu;
  b[kUp][kDown] = scale * ud;
  b[kDown][kUp] = scale * du;
  b[kDown][kDown] = scale * dd;
  return b;
}

TransitionElement electric_element(const RingParams& p, const EigenLabel& from, const EigenLabel& to) {
  return element_from_blocks(p, from, to, DipoleKind::Electric, electric_block);
}

TransitionElement magnetic_element(const RingParams& p, const EigenLabel& from, const EigenLabel& to) {
  return element_from_blocks(p, from, to, DipoleKind::Magnetic, magnetic_block);
}

PolarizationSet electric_selection(const EigenLabel& from, const EigenLabel& to, int n) {
  const EigenLabel a = normalized(from, n);
  const EigenLabel b = normalized(to, n);
  PolarizationSet out;
  if (a.band == b.band) {
    const int dl = mod(b.l - a.l, n);
    if (dl == 1 || dl == n - 1) out = out | kXY;
    return out;
  }
  const EigenLabel& down = a.band == Band::Down ? a : b;
  const EigenLabel& up = a.band == Band::Down ? b : a;
  const int dl = mod(up.l - down.l, n);
  if (dl == 0) out = out | kXYZ;
  if (dl == 1) out = out | kXY | kZ;
  if (dl == mod(-1, n)) out = out | kXY;
  if (dl == mod(2, n)) out = out | kXY;
  return out;
}

PolarizationSet magnetic_selection(const EigenLabel& from, const EigenLabel& to, int n) {
  const EigenLabel a = normalized(from, n);
  const EigenLabel b = normalized(to, n);
  PolarizationSet out;
  if (a.band == b.band) return out;
  const EigenLabel& down = a.band == Band::Down ? a : b;
  const EigenLabel& up = a.band == Band::Down ? b : a;
  const int dl = mod(up.l - down.l, n);
  if (dl == 0) out = out | kXYZ;
  if (dl == 1) out = out | kXYZ;
  if (dl == mod(2, n)) out = out | kXY;
  if (dl == mod(-1, n)) out = out | kXY;
  return out;
}

}  // namespace mobius
