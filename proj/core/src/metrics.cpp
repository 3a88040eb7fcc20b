#include "qrm/metrics.hpp"

#include <cmath>

namespace qrm {

double mse(const Vec& u_hat, const Vec& u_true) {
  if (u_hat.size() != u_true.size())
    throw std::invalid_argument("mse: size mismatch");
  return (u_hat - u_true).squaredNorm();
}

double mse(const Image& u_hat, const Image& u_true) {
  if (u_hat.rows() != u_true.rows() || u_hat.cols() != u_true.cols())
    throw std::invalid_argument("mse: shape mismatch");
  return (u_hat - u_true).squaredNorm();
}

double oracle_mse(const DenseOperator& a, const std::vector<int>& support,
                  double sigma) {
  if (support.empty())
    throw std::invalid_argument("oracle_mse: support must be nonempty");
  if (sigma < 0.0)
    throw std::invalid_argument("oracle_mse: sigma must be >= 0");
  const int m = a.rows();
  const int s = static_cast<int>(support.size());
  Eigen::MatrixXd as(m, s);
  for (int c = 0; c < s; ++c) {
    const int col = support[c];
    if (col < 0 || col >= a.cols())
      throw std::invalid_argument("oracle_mse: support index out of range");
    as.col(c) = a.matrix().col(col);
  }
  const Eigen::MatrixXd gram = as.transpose() * as;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const Eigen::MatrixXd inv =
      llt.solve(Eigen::MatrixXd::Identity(s, s));
  // LLT can report Success on a singular Gram (tiny rounded pivot) and hand
  // back finite garbage, so validate the inverse by reconstruction instead of
  // trusting info().
  const double resid =
      (gram * inv - Eigen::MatrixXd::Identity(s, s)).norm();
  if (llt.info() != Eigen::Success || !inv.allFinite() ||
      resid > 1e-8 * std::sqrt(double(s)))
    throw std::runtime_error("oracle_mse: support Gram matrix is singular");
  return sigma * sigma * inv.trace();
}

RePsnr re_psnr(const Vec& u_star, const Vec& u_true) {
  if (u_star.size() != u_true.size())
    throw std::invalid_argument("re_psnr: size mismatch");
  const double tn = u_true.norm();
  if (tn == 0.0) throw std::invalid_argument("re_psnr: u_true must be nonzero");
  const double err = (u_star - u_true).norm();
  RePsnr r;
  r.re = err / tn;
  if (err == 0.0) {
    r.psnr = kPsnrCap;
    return r;
  }
  const double peak = u_true.maxCoeff();
  if (!(peak > 0.0))
    throw std::invalid_argument("re_psnr: peak of u_true must be positive");
  const double n = static_cast<double>(u_true.size());
  r.psnr = std::min(kPsnrCap, 10.0 * std::log10(n * peak * peak / (err * err)));
  return r;
}

RePsnr re_psnr(const Image& u_star, const Image& u_true) {
  const Eigen::Map<const Vec> a(u_star.data(), u_star.size());
  const Eigen::Map<const Vec> b(u_true.data(), u_true.size());
  if (u_star.rows() != u_true.rows() || u_star.cols() != u_true.cols())
    throw std::invalid_argument("re_psnr: shape mismatch");
  return re_psnr(Vec(a), Vec(b));
}

} // namespace qrm
