#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace mobius {

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Scalar>
Scalar conj(const Scalar& x) {
  if constexpr (is_complex<Scalar>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}

}  // namespace detail

template <typename Scalar>
struct HermitianEigen {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns, orthonormal
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a real-symmetric or complex-Hermitian
/// matrix. Eigenvalues ascending; each eigenvector is scaled so that its first
/// component of magnitude > 1e-8 is real and positive.
template <typename Derived>
HermitianEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& input,
                                                      double tol = 1e-15, int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename HermitianEigen<Scalar>::Matrix;
  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("jacobi_eigen: matrix must be square");

  Matrix a = input;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("jacobi_eigen: matrix is not Hermitian");
  }
  Matrix v = Matrix::Identity(n, n);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i != j) s += std::norm(a(i, j));
      }
    }
    return std::sqrt(s);
  };
  const double total = std::max(a.norm(), 1e-300);

  HermitianEigen<Scalar> out;
  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > tol * total; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r <= 1e-300 || r <= 1e-18 * total) continue;
        const Scalar phase = a(p, q) / r;
        const Scalar phase_c = detail::conj(phase);
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Scalar upp = Scalar(c);
        const Scalar upq = Scalar(s);
        const Scalar uqp = Scalar(-s) * phase_c;
        const Scalar uqq = Scalar(c) * phase_c;

        const auto cp = a.col(p).eval();
        const auto cq = a.col(q).eval();
        a.col(p) = cp * upp + cq * uqp;
        a.col(q) = cp * upq + cq * uqq;
        const auto rp = a.row(p).eval();
        const auto rq = a.row(q).eval();
        a.row(p) = detail::conj(upp) * rp + detail::conj(uqp) * rq;
        a.row(q) = detail::conj(upq) * rp + detail::conj(uqq) * rq;
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(std::real(a(p, p)));
        a(q, q) = Scalar(std::real(a(q, q)));

        const auto vp = v.col(p).eval();
        const auto vq = v.col(q).eval();
        v.col(p) = vp * upp + vq * uqp;
        v.col(q) = vp * upq + vq * uqq;
      }
    }
  }
  if (off_norm() > tol * total * 1e3) throw std::runtime_error("jacobi_eigen: no convergence");
  out.sweeps = sweep;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return std::real(a(i, i)) < std::real(a(j, j)); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values[k] = std::real(a(src, src));
    auto col = v.col(src).eval();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = std::abs(col[i]);
      if (m > 1e-8) {
        col *= detail::conj(col[i]) / m;
        break;
      }
    }
    out.vectors.col(k) = col;
  }
  return out;
}

}  // namespace mobius
