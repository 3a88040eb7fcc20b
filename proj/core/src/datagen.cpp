#include "qrm/datagen.hpp"

#include "qrm/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qrm {

DenseOperator gen_gaussian_matrix(int m, int n, std::uint64_t seed) {
  // Centering collapses every column when m == 1, so a single-row matrix can
  // never satisfy the unit-column contract.
  if (m < 2 || n < 1)
    throw std::invalid_argument("gen_gaussian_matrix: need m >= 2, n >= 1");
  CounterRng rng(seed);
  Eigen::MatrixXd a(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) a(i, j) = rng.next_normal();
  for (int j = 0; j < n; ++j) {
    a.col(j).array() -= a.col(j).mean();
    const double nrm = a.col(j).norm();
    if (nrm < 1e-300)
      throw std::runtime_error(
          "gen_gaussian_matrix: column collapsed to zero after centering");
    a.col(j) /= nrm;
  }
  return DenseOperator(std::move(a));
}

Vec gen_sparse_signal(int n, int s, std::uint64_t seed) {
  if (n < 1 || s < 1 || s > n)
    throw std::invalid_argument("gen_sparse_signal: need 1 <= s <= n");
  CounterRng rng(seed);
  // Partial Fisher-Yates for the support, then signed two-scale amplitudes
  // assigned in ascending support order: mostly strong spikes with magnitude
  // uniform in [10, 20], the rest a weak tail uniform in [0.05, 0.15].
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < s; ++i) {
    const int j =
        i + static_cast<int>(rng.next_uniform() * static_cast<double>(n - i));
    std::swap(idx[i], idx[std::min(j, n - 1)]);
  }
  std::vector<int> sup(idx.begin(), idx.begin() + s);
  std::sort(sup.begin(), sup.end());
  Vec u = Vec::Zero(n);
  for (int i : sup) {
    const bool strong = rng.next_uniform() < 0.5;
    const double mag = strong ? 10.0 * (1.0 + rng.next_uniform())
                              : 0.05 + 0.1 * rng.next_uniform();
    u[i] = rng.next_uniform() < 0.5 ? -mag : mag;
  }
  return u;
}

Vec add_noise(const Vec& clean, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  if (sigma == 0.0) return clean;
  CounterRng rng(seed);
  Vec out = clean;
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out[i] += sigma * rng.next_normal();
  return out;
}

KSpace add_noise(const KSpace& clean, const Mask& mask, double sigma,
                 std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  if (clean.rows() != mask.rows() || clean.cols() != mask.cols())
    throw std::invalid_argument("add_noise: mask shape mismatch");
  if (sigma == 0.0) return clean;
  CounterRng rng(seed);
  KSpace out = clean;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if (mask(i, j)) {
        const double re = sigma * rng.next_normal();
        const double im = sigma * rng.next_normal();
        out(i, j) += std::complex<double>(re, im);
      }
  return out;
}

Image shepp_logan(int height, int width) {
  if (height < 32 || width < 32)
    throw std::invalid_argument("shepp_logan: grid must be at least 32 x 32");
  // Modified head-phantom ellipse table: semi-axes (a, b), center (x0, y0),
  // rotation phi in degrees, additive intensity.
  static const double table[10][6] = {
      {0.69, 0.92, 0.0, 0.0, 0.0, 1.0},
      {0.6624, 0.8740, 0.0, -0.0184, 0.0, -0.8},
      {0.11, 0.31, 0.22, 0.0, -18.0, -0.2},
      {0.16, 0.41, -0.22, 0.0, 18.0, -0.2},
      {0.21, 0.25, 0.0, 0.35, 0.0, 0.1},
      {0.046, 0.046, 0.0, 0.1, 0.0, 0.1},
      {0.046, 0.046, 0.0, -0.1, 0.0, 0.1},
      {0.046, 0.023, -0.08, -0.605, 0.0, 0.1},
      {0.023, 0.023, 0.0, -0.606, 0.0, 0.1},
      {0.023, 0.046, 0.06, -0.605, 0.0, 0.1},
  };
  Image img = Image::Zero(height, width);
  const double hx = (width - 1) / 2.0, hy = (height - 1) / 2.0;
  for (const auto& e : table) {
    const double asq = e[0] * e[0], bsq = e[1] * e[1];
    const double x0 = e[2], y0 = e[3];
    const double phi = e[4] * M_PI / 180.0;
    const double ct = std::cos(phi), st = std::sin(phi);
    for (int i = 0; i < height; ++i) {
      const double y = -(i - hy) / hy - y0;
      for (int j = 0; j < width; ++j) {
        const double x = (j - hx) / hx - x0;
        const double xr = x * ct + y * st;
        const double yr = y * ct - x * st;
        if (xr * xr / asq + yr * yr / bsq <= 1.0) img(i, j) += e[5];
      }
    }
  }
  // Summation order can leave values like -5.6e-17 where negative ellipses
  // overlap; clamp so intensities stay in [0, 1].
  img = img.cwiseMax(0.0);
  return img;
}

std::vector<int> support(const Vec& u, double tol) {
  std::vector<int> s;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (std::abs(u[i]) > tol) s.push_back(static_cast<int>(i));
  return s;
}

} // namespace qrm
