#include "mobius/oracle.hpp"

#include "mobius/jacobi.hpp"
#include "mobius/response.hpp"
#include "mobius/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mobius {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
constexpr double kLevelTol = 1e-9;  // eV

std::vector<std::vector<int>> level_groups(const std::vector<double>& energies) {
  std::vector<int> order(energies.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return energies[a] < energies[b]; });
  std::vector<std::vector<int>> groups;
  for (int idx : order) {
    if (groups.empty() || std::abs(energies[idx] - energies[groups.back().front()]) > kLevelTol) {
      groups.push_back({idx});
    } else {
      groups.back().push_back(idx);
    }
  }
  return groups;
}

Eigen::MatrixXd position_matrix(const RingParams& p) {
  const auto sites = site_positions(p);
  Eigen::MatrixXd r(static_cast<Eigen::Index>(sites.size()), 3);
  for (std::size_t i = 0; i < sites.size(); ++i) r.row(static_cast<Eigen::Index>(i)) = sites[i].position.transpose();
  return r;
}

Eigen::MatrixXcd hamiltonian_joule(const RingParams& p) {
  return build_hamiltonian(p).entries * units::ev_to_joule(1.0);
}

int mod(int a, int n) { return ((a % n) + n) % n; }

double electric_natural(const RingParams& p) { return electric_scale(p); }

double magnetic_natural(const RingParams& p) {
  return units::elementary_charge * units::ev_to_joule(p.xi_intra) * p.radius() * p.half_width / units::hbar;
}

}  // namespace

DenseOperator build_hamiltonian(const RingParams& p) {
  validate(p, true);
  const int n = p.n_per_ring;
  const double v = p.v_inter;
  const double xi = p.xi_intra;
  const double eps = p.eps_onsite;
  DenseOperator op;
  op.dim = basis_dimension(p);
  op.entries = Eigen::MatrixXcd::Zero(op.dim, op.dim);
  auto bond = [&](int i, int j, double t) {
    op.entries(i, j) += -t;
    op.entries(j, i) += -t;
  };

  if (p.topology == Topology::SingleRing) {
    for (int j = 0; j < n; ++j) {
      op.entries(j, j) = eps;
      bond(j, (j + 1) % n, xi);
    }
    return op;
  }

  const auto a = [n](int j) { return site_index(j, Ring::A, n); };
  const auto b = [n](int j) { return site_index(j, Ring::B, n); };
  for (int j = 0; j < n; ++j) {
    op.entries(a(j), a(j)) = eps;
    op.entries(b(j), b(j)) = -eps;
    bond(a(j), b(j), v);
  }
  for (int j = 0; j + 1 < n; ++j) {
    bond(a(j), a(j + 1), xi);
    bond(b(j), b(j + 1), xi);
  }
  if (p.topology == Topology::Mobius) {
    bond(a(n - 1), b(0), xi);
    bond(b(n - 1), a(0), xi);
  } else {
    bond(a(n - 1), a(0), xi);
    bond(b(n - 1), b(0), xi);
  }
  return op;
}

NumericEigensystem numeric_eigensystem(const DenseOperator& op) {
  const auto es = jacobi_eigen(op.entries);
  return {es.values, es.vectors};
}

Eigen::MatrixXcd twisted_translation(int n) {
  const int dim = 2 * n;
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) t((i + 1) % dim, i) = 1.0;
  return t;
}

NumericEigensystem labeled_mobius_eigensystem(const RingParams& p) {
  validate(p);
  if (p.topology != Topology::Mobius) throw InvalidParams("labeled eigensystem requires the Mobius topology");
  const int n = p.n_per_ring;
  const int dim = 2 * n;
  const NumericEigensystem es = numeric_eigensystem(build_hamiltonian(p));
  const Eigen::MatrixXcd t = twisted_translation(n);
  // cos(phi + theta0) separates conjugate translation eigenvalues e^{+-i phi}.
  const double theta0 = units::pi / (4.0 * n);
  const Eigen::MatrixXcd k = 0.5 * (std::polar(1.0, theta0) * t + std::polar(1.0, -theta0) * t.adjoint());

  std::vector<double> energies(es.values.data(), es.values.data() + dim);
  NumericEigensystem out;
  out.values = Eigen::VectorXd::Zero(dim);
  out.vectors = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<bool> filled(static_cast<std::size_t>(dim), false);

  for (const auto& group : level_groups(energies)) {
    const int g = static_cast<int>(group.size());
    Eigen::MatrixXcd q(dim, g);
    for (int c = 0; c < g; ++c) q.col(c) = es.vectors.col(group[static_cast<std::size_t>(c)]);
    const Eigen::MatrixXcd kg = q.adjoint() * k * q;
    const auto sub = jacobi_eigen(kg);
    const Eigen::MatrixXcd vecs = q * sub.vectors;
    for (int c = 0; c < g; ++c) {
      Eigen::VectorXcd v = vecs.col(c);
      const cd lambda = v.dot(t * v);
      const int m = mod(static_cast<int>(std::lround(std::arg(lambda) * n / units::pi)), dim);
      const EigenLabel label = m % 2 == 0 ? EigenLabel{m / 2, Band::Down} : EigenLabel{mod((m + 1) / 2, n), Band::Up};
      const int idx = label_index(label, n);
      if (filled[static_cast<std::size_t>(idx)]) {
        throw std::runtime_error("labeled_mobius_eigensystem: duplicate label " + to_string(label));
      }
      filled[static_cast<std::size_t>(idx)] = true;
      const cd a0 = v[site_index(0, Ring::A, n)];
      v *= std::conj(a0) / std::abs(a0);
      out.vectors.col(idx) = v;
      out.values[idx] = es.values[group[static_cast<std::size_t>(c)]];
    }
  }
  return out;
}

std::array<Eigen::MatrixXcd, 3> electric_dipole_operators(const RingParams& p) {
  const Eigen::MatrixXd r = position_matrix(p);
  std::array<Eigen::MatrixXcd, 3> d;
  for (int a = 0; a < 3; ++a) {
    d[static_cast<std::size_t>(a)] = (-units::elementary_charge * r.col(a)).cast<cd>().asDiagonal();
  }
  return d;
}

std::array<Eigen::MatrixXcd, 3> magnetic_dipole_operators(const RingParams& p, MagneticDefinition def) {
  const Eigen::MatrixXcd h = hamiltonian_joule(p);
  const Eigen::MatrixXd r = position_matrix(p);
  const Eigen::Index dim = h.rows();
  std::array<Eigen::MatrixXcd, 3> m;
  for (auto& x : m) x = Eigen::MatrixXcd::Zero(dim, dim);

  if (def == MagneticDefinition::Commutator) {
    std::array<Eigen::MatrixXcd, 3> rop;
    std::array<Eigen::MatrixXcd, 3> comm;
    for (int a = 0; a < 3; ++a) {
      rop[static_cast<std::size_t>(a)] = r.col(a).cast<cd>().asDiagonal();
    }
    for (int a = 0; a < 3; ++a) {
      const auto& ra = rop[static_cast<std::size_t>(a)];
      comm[static_cast<std::size_t>(a)] = h * ra - ra * h;
    }
    const cd pref = -I * units::elementary_charge / (2.0 * units::hbar);
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3;
      const int c = (a + 2) % 3;
      m[static_cast<std::size_t>(a)] =
          pref * (rop[static_cast<std::size_t>(b)] * comm[static_cast<std::size_t>(c)] -
                  rop[static_cast<std::size_t>(c)] * comm[static_cast<std::size_t>(b)]);
    }
    return m;
  }

  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      const cd hij = h(i, j);
      if (hij == 0.0) continue;
      const cd beta = -hij;
      const Eigen::Vector3d ri = r.row(i).transpose();
      const Eigen::Vector3d rj = r.row(j).transpose();
      const Eigen::Vector3d s = 0.5 * ri.cross(rj);
      const cd amp = I * units::elementary_charge * beta / units::hbar;
      for (int a = 0; a < 3; ++a) {
        m[static_cast<std::size_t>(a)](i, j) += amp * s[a];
        m[static_cast<std::size_t>(a)](j, i) += std::conj(amp) * s[a];
      }
    }
  }
  return m;
}

ElementTable sandwich(const std::array<Eigen::MatrixXcd, 3>& ops, const Eigen::MatrixXcd& states, DipoleKind kind) {
  const int dim = static_cast<int>(states.cols());
  ElementTable t;
  t.kind = kind;
  t.dim = dim;
  t.entries.assign(static_cast<std::size_t>(dim * dim), Eigen::Vector3cd::Zero());
  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXcd mat = states.adjoint() * ops[static_cast<std::size_t>(a)] * states;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) t.at(i, j)[a] = mat(i, j);
    }
  }
  return t;
}

namespace {

Eigen::MatrixXcd numeric_states(const RingParams& p) {
  if (p.topology == Topology::Mobius && p.eps_onsite == 0.0) return labeled_mobius_eigensystem(p).vectors;
  return numeric_eigensystem(build_hamiltonian(p)).vectors;
}

}  // namespace

ElementTable numeric_electric_elements(const RingParams& p) {
  return sandwich(electric_dipole_operators(p), numeric_states(p), DipoleKind::Electric);
}

ElementTable numeric_magnetic_elements(const RingParams& p, MagneticDefinition def) {
  return sandwich(magnetic_dipole_operators(p, def), numeric_states(p), DipoleKind::Magnetic);
}

namespace {

template <typename Fn>
ElementTable analytic_table(const RingParams& p, DipoleKind kind, Fn element) {
  const auto labels = all_labels(p.n_per_ring);
  ElementTable t;
  t.kind = kind;
  t.dim = static_cast<int>(labels.size());
  t.entries.assign(labels.size() * labels.size(), Eigen::Vector3cd::Zero());
  for (int i = 0; i < t.dim; ++i) {
    for (int j = 0; j < t.dim; ++j) {
      t.at(i, j) = element(p, labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]).vector;
    }
  }
  return t;
}

}  // namespace

ElementTable analytic_electric_table(const RingParams& p) {
  return analytic_table(p, DipoleKind::Electric, electric_element);
}

ElementTable analytic_magnetic_table(const RingParams& p) {
  return analytic_table(p, DipoleKind::Magnetic, magnetic_element);
}

double max_table_deviation(const ElementTable& a, const ElementTable& b, double scale) {
  if (a.dim != b.dim) throw std::invalid_argument("max_table_deviation: dimension mismatch");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    dev = std::max(dev, (a.entries[i] - b.entries[i]).cwiseAbs().maxCoeff());
  }
  return dev / scale;
}

std::vector<double> label_energies(const RingParams& p) {
  std::vector<double> out;
  for (const auto& label : all_labels(p.n_per_ring)) out.push_back(band_energy(p, label));
  return out;
}

double dyad_deviation(const ElementTable& a, const ElementTable& b, const std::vector<double>& energies,
                      double scale) {
  if (a.dim != b.dim || static_cast<int>(energies.size()) != a.dim) {
    throw std::invalid_argument("dyad_deviation: dimension mismatch");
  }
  const auto groups = level_groups(energies);
  double dev = 0.0;
  for (const auto& g1 : groups) {
    for (const auto& g2 : groups) {
      Eigen::Matrix3cd da = Eigen::Matrix3cd::Zero();
      Eigen::Matrix3cd db = Eigen::Matrix3cd::Zero();
      for (int i : g1) {
        for (int j : g2) {
          da += a.at(i, j) * a.at(i, j).adjoint();
          db += b.at(i, j) * b.at(i, j).adjoint();
        }
      }
      dev = std::max(dev, (da - db).cwiseAbs().maxCoeff());
    }
  }
  return dev / (scale * scale);
}

Calibration calibrate_conventions(const ElementTable& analytic, const ElementTable& numeric, int n, double scale) {
  if (analytic.dim != numeric.dim || analytic.dim != 2 * n) {
    throw std::invalid_argument("calibrate_conventions: tables must both be 2N x 2N");
  }
  const auto labels = all_labels(n);
  using Key = std::tuple<int, int, int>;
  std::map<Key, std::vector<std::pair<int, int>>> blocks;
  for (int i = 0; i < analytic.dim; ++i) {
    for (int j = 0; j < analytic.dim; ++j) {
      const EigenLabel& from = labels[static_cast<std::size_t>(i)];
      const EigenLabel& to = labels[static_cast<std::size_t>(j)];
      blocks[{mod(to.l - from.l, n), static_cast<int>(from.band), static_cast<int>(to.band)}].push_back({i, j});
    }
  }
  Calibration cal;
  for (const auto& [key, members] : blocks) {
    cd overlap = 0.0;
    for (const auto& [i, j] : members) overlap += analytic.at(i, j).dot(numeric.at(i, j));
    const cd phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cd(1.0, 0.0);
    double residual = 0.0;
    for (const auto& [i, j] : members) {
      residual = std::max(residual, (numeric.at(i, j) - phase * analytic.at(i, j)).cwiseAbs().maxCoeff());
    }
    CalibrationBlock b;
    b.dl = std::get<0>(key);
    b.from_band = static_cast<Band>(std::get<1>(key));
    b.to_band = static_cast<Band>(std::get<2>(key));
    b.phase = phase;
    b.residual = residual / scale;
    cal.max_residual = std::max(cal.max_residual, b.residual);
    cal.blocks.push_back(b);
  }
  cal.ok = cal.max_residual <= 1e-6;
  return cal;
}

PerfectRingReport perfect_ring_regression(const RingParams& p) {
  if (p.topology != Topology::SingleRing) throw InvalidParams("perfect_ring_regression requires SingleRing");
  validate(p, true);
  const Eigen::MatrixXcd h = hamiltonian_joule(p);
  const auto m = magnetic_dipole_operators(p, MagneticDefinition::Commutator);
  const auto d = electric_dipole_operators(p);
  PerfectRingReport rep;
  const double mz_max = std::max(m[2].cwiseAbs().maxCoeff(), 1e-300);
  const double h_max = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  rep.commutator_norm = (m[2] * h - h * m[2]).cwiseAbs().maxCoeff() / (mz_max * h_max);

  const double r = p.radius();
  const double m_scale = units::elementary_charge * units::ev_to_joule(p.xi_intra) * r * r / units::hbar;
  const double d_scale = units::elementary_charge * r;
  rep.max_mxy = std::max(m[0].cwiseAbs().maxCoeff(), m[1].cwiseAbs().maxCoeff()) / m_scale;

  const NumericEigensystem es = numeric_eigensystem(build_hamiltonian(p));
  const ElementTable mt = sandwich(m, es.vectors, DipoleKind::Magnetic);
  const ElementTable dt = sandwich(d, es.vectors, DipoleKind::Electric);
  for (int i = 0; i < mt.dim; ++i) {
    for (int j = 0; j < mt.dim; ++j) {
      if (std::abs(es.values[i] - es.values[j]) <= kLevelTol) continue;
      rep.max_offdiag_m = std::max(rep.max_offdiag_m, mt.at(i, j).cwiseAbs().maxCoeff() / m_scale);
      rep.max_offdiag_d = std::max(rep.max_offdiag_d, dt.at(i, j).cwiseAbs().maxCoeff() / d_scale);
    }
  }
  return rep;
}

SharedTransitionReport shared_transitions(const RingParams& p, double tol) {
  validate(p, true);
  const NumericEigensystem es = numeric_eigensystem(build_hamiltonian(p));
  const int dim = static_cast<int>(es.values.size());
  if (dim > 1 && es.values[1] - es.values[0] <= kLevelTol) {
    throw UnsupportedRegime("shared_transitions: degenerate ground level");
  }
  const ElementTable dt = sandwich(electric_dipole_operators(p), es.vectors, DipoleKind::Electric);
  const ElementTable mt =
      sandwich(magnetic_dipole_operators(p, MagneticDefinition::Commutator), es.vectors, DipoleKind::Magnetic);
  const double e_scale = electric_natural(p);
  const double m_scale = magnetic_natural(p);

  std::vector<double> energies(es.values.data(), es.values.data() + dim);
  SharedTransitionReport rep;
  rep.topology = p.topology;
  for (const auto& group : level_groups(energies)) {
    if (group.front() == 0) continue;
    TransitionGroup tg;
    tg.energy = energies[static_cast<std::size_t>(group.front())] - energies[0];
    tg.states = group;
    double se = 0.0;
    double sm = 0.0;
    for (int s : group) {
      se += dt.at(0, s).squaredNorm();
      sm += mt.at(0, s).squaredNorm();
    }
    tg.electric = std::sqrt(se) / e_scale;
    tg.magnetic = std::sqrt(sm) / m_scale;
    tg.both = tg.electric > tol && tg.magnetic > tol;
    rep.both_count += tg.both ? 1 : 0;
    rep.groups.push_back(std::move(tg));
  }
  return rep;
}

SharedTransitionReport annulene_cross_check(const RingParams& p, double tol) {
  if (p.topology != Topology::DoubleRingPeriodic) {
    throw InvalidParams("annulene_cross_check requires DoubleRingPeriodic");
  }
  return shared_transitions(p, tol);
}

bool ValidationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

Check below(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value, threshold, value < threshold, std::move(note)};
}

double spectrum_deviation(const RingParams& p) {
  const NumericEigensystem es = numeric_eigensystem(build_hamiltonian(p));
  std::vector<double> closed = label_energies(p);
  std::sort(closed.begin(), closed.end());
  double dev = 0.0;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    dev = std::max(dev, std::abs(closed[i] - es.values[static_cast<Eigen::Index>(i)]));
  }
  return dev;
}

double selection_leak(const RingParams& p, const ElementTable& t, bool magnetic) {
  const int n = p.n_per_ring;
  const auto labels = all_labels(n);
  const double scale = magnetic ? magnetic_natural(p) : electric_natural(p);
  double leak = 0.0;
  for (int i = 0; i < t.dim; ++i) {
    for (int j = 0; j < t.dim; ++j) {
      const EigenLabel& a = labels[static_cast<std::size_t>(i)];
      const EigenLabel& b = labels[static_cast<std::size_t>(j)];
      if (magnetic && a.band == b.band) continue;
      const PolarizationSet allowed = magnetic ? magnetic_selection(a, b, n) : electric_selection(a, b, n);
      const bool mask[3] = {allowed.x, allowed.y, allowed.z};
      for (int c = 0; c < 3; ++c) {
        if (!mask[c]) leak = std::max(leak, std::abs(t.at(i, j)[c]) / scale);
      }
    }
  }
  return leak;
}

}  // namespace

ValidationReport validation_report(const RingParams& input) {
  ValidationReport rep;
  RingParams p = input;
  p.topology = Topology::Mobius;
  p.eps_onsite = 0.0;
  validate(p);

  rep.checks.push_back(below("spectrum_max_dev_ev", spectrum_deviation(p), 1e-10));
  const double deg = std::abs(band_energy(p, {0, Band::Up}) - band_energy(p, {1, Band::Up}));
  rep.checks.push_back({"degeneracy_0up_1up_ev", deg, 0.0, deg == 0.0, "exact closed-form equality"});

  Eigen::MatrixXcd u(2 * p.n_per_ring, 2 * p.n_per_ring);
  const auto states = all_eigenstates(p);
  for (std::size_t i = 0; i < states.size(); ++i) u.col(static_cast<Eigen::Index>(i)) = states[i].amplitudes;
  const double unitarity =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  rep.checks.push_back(below("eigenstate_unitarity", unitarity, 1e-12));

  for (int n : {4, 6, 12, 24}) {
    RingParams q = p;
    q.n_per_ring = n;
    const auto energies = label_energies(q);
    const double es = electric_natural(q);
    const double ms = magnetic_natural(q);
    const ElementTable ea = analytic_electric_table(q);
    const ElementTable ma = analytic_magnetic_table(q);
    const ElementTable en = numeric_electric_elements(q);
    const ElementTable mn = numeric_magnetic_elements(q);
    const std::string tag = "_n" + std::to_string(n);
    rep.checks.push_back(below("electric_dyad_dev" + tag, dyad_deviation(ea, en, energies, es), 1e-8));
    rep.checks.push_back(below("magnetic_dyad_dev" + tag, dyad_deviation(ma, mn, energies, ms), 1e-8));
    rep.checks.push_back(below("electric_element_dev" + tag, max_table_deviation(ea, en, es), 1e-9));
    rep.checks.push_back(below("magnetic_element_dev" + tag, max_table_deviation(ma, mn, ms), 1e-9));
    const ElementTable mb = numeric_magnetic_elements(q, MagneticDefinition::BondCurrent);
    rep.checks.push_back(below("commutator_vs_bond_current" + tag, max_table_deviation(mn, mb, ms), 1e-10));
  }

  const double es = electric_natural(p);
  const double ms = magnetic_natural(p);
  const ElementTable ea = analytic_electric_table(p);
  const ElementTable ma = analytic_magnetic_table(p);
  const ElementTable en = numeric_electric_elements(p);
  const ElementTable mn = numeric_magnetic_elements(p);
  const Calibration ce = calibrate_conventions(ea, en, p.n_per_ring, es);
  const Calibration cm = calibrate_conventions(ma, mn, p.n_per_ring, ms);
  rep.checks.push_back(below("electric_calibration_residual", ce.max_residual, 1e-9));
  rep.checks.push_back(below("magnetic_calibration_residual", cm.max_residual, 1e-9));
  rep.checks.push_back(below("electric_selection_leak", selection_leak(p, en, false), 1e-12));
  rep.checks.push_back(below("magnetic_selection_leak", selection_leak(p, mn, true), 1e-12));

  RingParams single = p;
  single.topology = Topology::SingleRing;
  const PerfectRingReport pr = perfect_ring_regression(single);
  rep.checks.push_back(below("single_ring_commutator", pr.commutator_norm, 1e-12));
  rep.checks.push_back(below("single_ring_offdiag_m", pr.max_offdiag_m, 1e-12));
  rep.checks.push_back(below("single_ring_mxy", pr.max_mxy, 1e-12));
  rep.checks.push_back({"single_ring_offdiag_d", pr.max_offdiag_d, 1e-3, pr.max_offdiag_d > 1e-3,
                        "electric transitions remain allowed"});

  RingParams annulene = p;
  annulene.topology = Topology::DoubleRingPeriodic;
  const SharedTransitionReport ar = annulene_cross_check(annulene);
  rep.checks.push_back({"annulene_shared_transitions", static_cast<double>(ar.both_count), 0.0, ar.both_count == 0,
                        "no transition is both electric and magnetic"});
  const SharedTransitionReport mr = shared_transitions(p);
  const bool lowest_shared = !mr.groups.empty() && mr.groups.front().both;
  rep.checks.push_back({"mobius_shared_transitions", static_cast<double>(mr.both_count), 1.0,
                        mr.both_count >= 1 && lowest_shared, "(0,down)<->(0,up) is both electric and magnetic"});

  MediumConfig cyl{p, false};
  cyl.ring.volume_convention = VolumeConvention::Cylinder4W;
  MediumConfig app{p, false};
  app.ring.volume_convention = VolumeConvention::AppendixD;
  const double tau_cyl = critical_lifetime(cyl);
  const double tau_app = critical_lifetime(app);
  const RingParams ref = default_params();
  if (p.n_per_ring == ref.n_per_ring && p.v_inter == ref.v_inter && p.xi_intra == ref.xi_intra &&
      p.half_width == ref.half_width && !p.radius_override) {
    const double tau_rel = std::abs(tau_cyl / (0.51 * units::ns) - 1.0);
    rep.checks.push_back(below("tau_c_cylinder_4w_vs_0.51ns", tau_rel, 0.05, "relative deviation"));
  }
  rep.quantities["hbar_delta_0up_ev"] = lowest_interband_gap(p);
  rep.quantities["volume_appendix_d_m3"] = molecular_volume(app);
  rep.quantities["volume_cylinder_4w_m3"] = molecular_volume(cyl);
  rep.quantities["tau_c_appendix_d_ns"] = tau_app / units::ns;
  rep.quantities["tau_c_cylinder_4w_ns"] = tau_cyl / units::ns;
  rep.quantities["bandwidth_appendix_d_rad_s"] = bandwidth(app);
  rep.quantities["bandwidth_cylinder_4w_rad_s"] = bandwidth(cyl);
  rep.quantities["alpha"] = alpha_beta(cyl).alpha;
  rep.quantities["beta"] = alpha_beta(cyl).beta;
  rep.notes.push_back(
      "tau_c depends on the molecular volume: appendix_d (2 pi (R+W)^2 W) gives 0.26 ns, "
      "cylinder_4w (pi (R+W)^2 4W) gives 0.51 ns");
  return rep;
}

}  // namespace mobius
