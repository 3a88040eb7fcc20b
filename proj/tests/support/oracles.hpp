#pragma once

#include <Eigen/Dense>
#include <qrm/operators.hpp>
#include <qrm/rng.hpp>
#include <qrm/types.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Reference implementations written straight from the defining formulas.
// Deliberately naive (plain loops, no library solvers) so the tests compare
// two independent code paths.
namespace oracles {

inline qrm::Vec naive_apply(const Eigen::MatrixXd& a, const qrm::Vec& u) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (u.size() != n) throw std::invalid_argument("naive_apply: size");
  qrm::Vec out = qrm::Vec::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out[i] += a(i, j) * u[j];
  return out;
}

inline Eigen::MatrixXd naive_mul(const Eigen::MatrixXd& a,
                                 const Eigen::MatrixXd& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("naive_mul: size");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      for (Eigen::Index j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// Gaussian elimination with partial pivoting on a copy.
inline qrm::Vec gauss_solve(Eigen::MatrixXd a, qrm::Vec b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("gauss_solve: need square system");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw std::runtime_error("gauss_solve: singular");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      std::swap(b[piv], b[col]);
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double fac = a(r, col) / a(col, col);
      if (fac == 0.0) continue;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= fac * a(col, c);
      b[r] -= fac * b[col];
    }
  }
  qrm::Vec x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (Eigen::Index c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
    x[r] = s / a(r, r);
  }
  return x;
}

// Periodic forward-difference matrix on an h x w grid. Pixel p = i + h*j
// (column-major, matching Eigen's vectorization); rows 0..hw-1 hold the
// x-differences, rows hw..2hw-1 the y-differences.
inline Eigen::MatrixXd grad_matrix(int h, int w) {
  const int hw = h * w;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * hw, hw);
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < h; ++i) {
      const int p = i + h * j;
      const int px = i + h * ((j + 1) % w);
      const int py = (i + 1) % h + h * j;
      d(p, px) += 1.0;
      d(p, p) -= 1.0;
      d(hw + p, py) += 1.0;
      d(hw + p, p) -= 1.0;
    }
  return d;
}

inline double soft(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Long-run proximal gradient (ISTA) for
//   min_u w||u||_1 + (beta/2)||u - u_ref||^2 - <h, u> + (lambda/2)||A u - f||^2.
inline qrm::Vec prox_grad_signal(const Eigen::MatrixXd& a, const qrm::Vec& f,
                                 double lambda, double w, double beta,
                                 const qrm::Vec& u_ref, const qrm::Vec& h,
                                 int iters) {
  const double smax = a.jacobiSvd().singularValues()(0);
  const double lip = beta + lambda * smax * smax;
  const double step = 1.0 / lip;
  qrm::Vec u = u_ref;
  for (int it = 0; it < iters; ++it) {
    const qrm::Vec grad =
        beta * (u - u_ref) - h + lambda * (a.transpose() * (a * u - f));
    const qrm::Vec z = u - step * grad;
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = soft(z[i], step * w);
  }
  return u;
}

// vec / unvec between images and column-major stacked vectors.
inline qrm::Vec vec_of(const qrm::Image& m) {
  return Eigen::Map<const qrm::Vec>(m.data(), m.size());
}

inline qrm::Image image_of(const qrm::Vec& v, int h, int w) {
  return Eigen::Map<const qrm::Image>(v.data(), h, w);
}

// Dense h*w x h*w matrix of u -> A^T A u for a masked Fourier operator,
// built column by column from basis images.
inline Eigen::MatrixXd materialize_ata(const qrm::RadialFourierOperator& op) {
  const int h = op.height(), w = op.width(), n = h * w;
  Eigen::MatrixXd t(n, n);
  for (int p = 0; p < n; ++p) {
    qrm::Vec e = qrm::Vec::Zero(n);
    e[p] = 1.0;
    t.col(p) = vec_of(op.apply_adjoint(op.apply(image_of(e, h, w))));
  }
  return t;
}

// Randomized acceptance-style property sweeps. Each returns the number of
// violations and reports the worst error seen.

inline int sweep_shrink_prox(int cases, std::uint64_t seed, double* worst);
inline int sweep_woodbury_dense(int cases, std::uint64_t seed, double* worst);
inline int sweep_spectral_dense(int cases, std::uint64_t seed, double* worst);

inline int sweep_shrink_prox(int cases, std::uint64_t seed, double* worst) {
  qrm::CounterRng rng(seed);
  int bad = 0;
  double w = 0.0;
  for (int c = 0; c < cases; ++c) {
    const double t = 2.0 * rng.next_uniform();
    const double x = 4.0 * rng.next_normal();
    const double v = soft(x, t);
    // 0 must lie in v - x + t*subdiff|.|(v).
    double err;
    if (v != 0.0)
      err = std::abs(v - x + t * (v > 0.0 ? 1.0 : -1.0));
    else
      err = std::max(std::abs(x) - t, 0.0);
    w = std::max(w, err);
    if (err > 1e-12) ++bad;
  }
  if (worst) *worst = w;
  return bad;
}

inline int sweep_woodbury_dense(int cases, std::uint64_t seed, double* worst) {
  qrm::CounterRng rng(seed);
  int bad = 0;
  double w = 0.0;
  for (int c = 0; c < cases; ++c) {
    const int m = 2 + static_cast<int>(rng.next_uniform() * 7);  // 2..8
    const int n = m + static_cast<int>(rng.next_uniform() * 57); // m..m+56, <= 64
    Eigen::MatrixXd a(m, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i) a(i, j) = rng.next_normal();
    qrm::Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = rng.next_normal();
    const double lambda = 0.1 + 100.0 * rng.next_uniform();
    const double kappa = 1.0 / (0.5 + 20.0 * rng.next_uniform());
    const qrm::DenseOperator op(a);
    const qrm::Vec x = op.woodbury_solve(lambda, kappa, b);
    Eigen::MatrixXd big = lambda * (a.transpose() * a);
    big.diagonal().array() += 1.0 / kappa;
    const qrm::Vec x_ref = gauss_solve(big, b);
    const double err = (x - x_ref).norm() / std::max(x_ref.norm(), 1e-300);
    w = std::max(w, err);
    if (err > 1e-10) ++bad;
  }
  if (worst) *worst = w;
  return bad;
}

inline int sweep_spectral_dense(int cases, std::uint64_t seed, double* worst) {
  qrm::CounterRng rng(seed);
  int bad = 0;
  double wrst = 0.0;
  const int h = 8, w = 8, n = h * w;
  const Eigen::MatrixXd d = grad_matrix(h, w);
  const Eigen::MatrixXd dtd = d.transpose() * d;
  // A handful of operators, many right-hand sides each.
  const int n_masks = std::max(1, cases / 50);
  for (int mi = 0; mi < n_masks; ++mi) {
    const int lines = 1 + static_cast<int>(rng.next_uniform() * 6);
    const qrm::RadialFourierOperator op(qrm::radial_mask(h, w, lines));
    const Eigen::MatrixXd ata = materialize_ata(op);
    const int per = (cases + n_masks - 1) / n_masks;
    for (int c = 0; c < per; ++c) {
      const double rho = 0.5 + 20.0 * rng.next_uniform();
      const double beta = 0.1 + 5.0 * rng.next_uniform();
      const double lambda = 0.5 + 200.0 * rng.next_uniform();
      const Eigen::ArrayXXd denom = qrm::spectral_denominator(op, rho, beta, lambda);
      qrm::Vec b(n);
      for (int i = 0; i < n; ++i) b[i] = rng.next_normal();
      qrm::KSpace spec = op.fft().forward(image_of(b, h, w));
      for (int jj = 0; jj < w; ++jj)
        for (int ii = 0; ii < h; ++ii) spec(ii, jj) /= denom(ii, jj);
      const qrm::Vec x = vec_of(op.fft().inverse(spec).real());
      Eigen::MatrixXd big = lambda * ata + rho * dtd;
      big.diagonal().array() += beta;
      const qrm::Vec x_ref = gauss_solve(big, b);
      const double err = (x - x_ref).norm() / std::max(x_ref.norm(), 1e-300);
      wrst = std::max(wrst, err);
      if (err > 1e-9) ++bad;
    }
  }
  if (worst) *worst = wrst;
  return bad;
}

} // namespace oracles
