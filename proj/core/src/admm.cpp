#include "qrm/admm.hpp"

#include <cmath>
#include <limits>

namespace qrm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double rel_change_of(double diff_norm, double new_norm) {
  if (new_norm > 0.0) return diff_norm / new_norm;
  return diff_norm > 0.0 ? kInf : 0.0;
}

GradField field_sub(const GradField& a, const GradField& b) {
  return GradField{a.dx - b.dx, a.dy - b.dy};
}

double field_norm(const GradField& g) {
  return std::sqrt(g.dx.squaredNorm() + g.dy.squaredNorm());
}

} // namespace

Vec shrink(const Vec& x, double t) {
  if (t < 0.0) throw std::invalid_argument("shrink: threshold must be >= 0");
  return x.unaryExpr(
      [t](double v) { return sgn(v) * std::max(std::abs(v) - t, 0.0); });
}

Image shrink(const Image& x, double t) {
  if (t < 0.0) throw std::invalid_argument("shrink: threshold must be >= 0");
  return x.unaryExpr(
      [t](double v) { return sgn(v) * std::max(std::abs(v) - t, 0.0); });
}

GradField shrink(const GradField& g, double t) {
  return GradField{shrink(g.dx, t), shrink(g.dy, t)};
}

Vec woodbury_solve(const DenseOperator& a, double kappa, double lambda,
                   const Vec& b) {
  return a.woodbury_solve(lambda, kappa, b);
}

// ---------------------------------------------------------------- signal

SignalAdmm::SignalAdmm(const DenseOperator& a, Vec f, double lambda,
                       double rho, double eps, int j_max)
    : a_(&a),
      f_(std::move(f)),
      lambda_(lambda),
      rho_(rho),
      eps_(eps),
      j_max_(j_max) {
  if (f_.size() != a.rows())
    throw std::invalid_argument("SignalAdmm: f size mismatch");
  if (!(lambda_ >= 0.0) || !(rho_ > 0.0) || !(eps_ > 0.0) || j_max_ < 1)
    throw std::invalid_argument("SignalAdmm: bad parameters");
  atf_ = a_->apply_adjoint(f_);
}

void SignalAdmm::reset(const Vec& u0) {
  if (u0.size() != a_->cols())
    throw std::invalid_argument("SignalAdmm::reset: size mismatch");
  y_ = u0;
  eta_ = Vec::Zero(u0.size());
}

InnerResult SignalAdmm::solve(double w, double beta, const Vec& u_ref,
                              const Vec& h, Vec& u_out) {
  const int n = a_->cols();
  if (w < 0.0) throw std::invalid_argument("SignalAdmm: negative L1 weight");
  if (beta < 0.0) throw std::invalid_argument("SignalAdmm: negative beta");
  if (u_ref.size() != n || h.size() != n)
    throw std::invalid_argument("SignalAdmm: size mismatch");
  if (y_.size() != n) reset(u_ref);

  const double kappa = 1.0 / (beta + rho_);
  a_->prepare_factor(lambda_, kappa);
  const Vec rhs_const = beta * u_ref + h + lambda_ * atf_;
  const double thresh = w / rho_;
  const double ref_norm = u_ref.norm();

  InnerResult out;
  Vec u = Vec::Zero(n), u_prev = Vec::Zero(n);
  for (int j = 1; j <= j_max_; ++j) {
    u = shrink(Vec(y_ - eta_), thresh);
    y_ = a_->woodbury_solve(lambda_, kappa, rhs_const + rho_ * (u + eta_));
    eta_ += u - y_;
    out.iters = j;
    out.primal_residual = (u - y_).norm();
    if (j > 1) {
      out.rel_change = rel_change_of((u - u_prev).norm(), u.norm());
      const double floor = 1e-8 * std::max(ref_norm, u.norm());
      if (out.rel_change <= eps_ && out.primal_residual <= floor) {
        out.converged = true;
        break;
      }
    }
    u_prev = u;
  }
  if (!u.allFinite())
    throw std::runtime_error("SignalAdmm: iterate diverged to non-finite values");

  u_out = u;
  const Vec r = a_->apply(u) - f_;
  out.objective = w * u.lpNorm<1>() + 0.5 * beta * (u - u_ref).squaredNorm() -
                  h.dot(u) + 0.5 * lambda_ * r.squaredNorm();
  return out;
}

// ---------------------------------------------------------------- image

ImageAdmm::ImageAdmm(const RadialFourierOperator& a, KSpace f, double lambda,
                     double rho, double eps, int j_max)
    : a_(&a),
      f_(std::move(f)),
      lambda_(lambda),
      rho_(rho),
      eps_(eps),
      j_max_(j_max) {
  if (f_.rows() != a.height() || f_.cols() != a.width())
    throw std::invalid_argument("ImageAdmm: f shape mismatch");
  if (!(lambda_ >= 0.0) || !(rho_ > 0.0) || !(eps_ > 0.0) || j_max_ < 1)
    throw std::invalid_argument("ImageAdmm: bad parameters");
  atf_ = a_->apply_adjoint(f_);
}

void ImageAdmm::reset(const Image& u0) {
  if (u0.rows() != a_->height() || u0.cols() != a_->width())
    throw std::invalid_argument("ImageAdmm::reset: shape mismatch");
  y_ = grad(u0);
  eta_ = GradField{Image::Zero(u0.rows(), u0.cols()),
                   Image::Zero(u0.rows(), u0.cols())};
}

InnerResult ImageAdmm::solve(double w, double beta, const Image& u_ref,
                             const Image& h, Image& u_out) {
  const int hh = a_->height(), ww = a_->width();
  if (w < 0.0) throw std::invalid_argument("ImageAdmm: negative L1 weight");
  if (beta < 0.0) throw std::invalid_argument("ImageAdmm: negative beta");
  if (u_ref.rows() != hh || u_ref.cols() != ww || h.rows() != hh ||
      h.cols() != ww)
    throw std::invalid_argument("ImageAdmm: shape mismatch");
  if (y_.dx.rows() != hh || y_.dx.cols() != ww) reset(u_ref);
  if (denom_beta_ != beta) {
    denom_ = spectral_denominator(*a_, rho_, beta, lambda_);
    denom_beta_ = beta;
  }

  const Image rhs_const = lambda_ * atf_ + beta * u_ref + h;
  const double thresh = w / rho_;
  const double ref_norm = u_ref.norm();
  const Fft2& fft = a_->fft();

  InnerResult out;
  Image u = Image::Zero(hh, ww), u_prev = Image::Zero(hh, ww);
  for (int j = 1; j <= j_max_; ++j) {
    const Image rhs = rhs_const + rho_ * grad_adjoint(field_sub(y_, eta_));
    KSpace spec = fft.forward(rhs);
    for (Eigen::Index c = 0; c < spec.cols(); ++c)
      for (Eigen::Index r = 0; r < spec.rows(); ++r) spec(r, c) /= denom_(r, c);
    u = fft.inverse(spec).real();
    const GradField g = grad(u);
    const GradField gy{g.dx + eta_.dx, g.dy + eta_.dy};
    y_ = shrink(gy, thresh);
    eta_ = GradField{gy.dx - y_.dx, gy.dy - y_.dy};
    out.iters = j;
    out.primal_residual = field_norm(field_sub(g, y_));
    if (j > 1) {
      out.rel_change = rel_change_of((u - u_prev).norm(), u.norm());
      const double floor = 1e-8 * std::max(ref_norm, u.norm());
      if (out.rel_change <= eps_ && out.primal_residual <= floor) {
        out.converged = true;
        break;
      }
    }
    u_prev = u;
  }
  if (!u.allFinite())
    throw std::runtime_error("ImageAdmm: iterate diverged to non-finite values");

  u_out = u;
  const GradField g = grad(u);
  out.objective = w * (g.dx.cwiseAbs().sum() + g.dy.cwiseAbs().sum()) +
                  0.5 * beta * (u - u_ref).squaredNorm() -
                  (h.array() * u.array()).sum() +
                  0.5 * lambda_ * (a_->apply(u) - f_).squaredNorm();
  return out;
}

// ------------------------------------------------------- one-shot wrappers

Vec solve_signal_subproblem(const Vec& u_k, const Vec& h_k,
                            const DenseOperator& a, const Vec& f,
                            const Regularizer& reg, const SolverConfig& cfg) {
  cfg.validate(true);
  const RegEval e = reg.eval(u_k);
  if (e.h == 0.0)
    throw DegenerateIterateError("solve_signal_subproblem: H(u_k) = 0");
  SignalAdmm admm(a, f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(u_k);
  Vec u;
  admm.solve(1.0 / e.h, cfg.beta, u_k, h_k, u);
  return u;
}

Image solve_image_subproblem(const Image& u_k, const Image& h_k,
                             const RadialFourierOperator& a, const KSpace& f,
                             const Regularizer& reg, const SolverConfig& cfg) {
  cfg.validate(true);
  const RegEval e = reg.eval(u_k);
  if (e.h == 0.0)
    throw DegenerateIterateError("solve_image_subproblem: grad u_k = 0");
  ImageAdmm admm(a, f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(u_k);
  Image u;
  admm.solve(1.0 / e.h, cfg.beta, u_k, h_k, u);
  return u;
}

// ------------------------------------------------------------- KKT residual

double kkt_residual(const Vec& u, const Vec& u_k, const Vec& h, double w,
                    double beta, const DenseOperator& a, const Vec& f,
                    double lambda) {
  if (w < 0.0) throw std::invalid_argument("kkt_residual: negative L1 weight");
  const Vec g = -(beta * (u - u_k) - h + lambda * a.apply_adjoint(a.apply(u) - f));
  // Optimality is g in w * subdiff ||.||_1 at u; the set is a box product, so
  // the distance splits per coordinate.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    double d;
    if (u[i] != 0.0) {
      d = g[i] - w * sgn(u[i]);
    } else {
      d = std::max(std::abs(g[i]) - w, 0.0);
    }
    acc += d * d;
  }
  return std::sqrt(acc);
}

double kkt_residual(const Image& u, const Image& u_k, const Image& h, double w,
                    double beta, const RadialFourierOperator& a,
                    const KSpace& f, double lambda) {
  if (w < 0.0) throw std::invalid_argument("kkt_residual: negative L1 weight");
  const Image r =
      beta * (u - u_k) - h + lambda * a.apply_adjoint(a.apply(u) - f);
  const GradField du = grad(u);
  const Eigen::Index hh = u.rows(), ww = u.cols();

  // Search min_z ||r + D^T z||, z entry pinned to w*sign on supp(Du), boxed
  // to [-w, w] elsewhere. Iterates of the spectral u-update never hit exact
  // zeros, so support membership uses a relative floor on |Du|.
  const double du_max =
      std::max(du.dx.cwiseAbs().maxCoeff(), du.dy.cwiseAbs().maxCoeff());
  const double pin_tol = 1e-7 * du_max;
  GradField z{Image::Zero(hh, ww), Image::Zero(hh, ww)};
  auto pin = [&](Image& zc, const Image& dc) {
    for (Eigen::Index j = 0; j < ww; ++j)
      for (Eigen::Index i = 0; i < hh; ++i)
        if (std::abs(dc(i, j)) > pin_tol) zc(i, j) = w * sgn(dc(i, j));
  };
  pin(z.dx, du.dx);
  pin(z.dy, du.dy);

  // Projected gradient, step below 1/||D D^T|| (<= 1/8).
  const double step = 0.12;
  double best = (r + grad_adjoint(z)).norm();
  for (int it = 0; it < 20000; ++it) {
    const Image res = r + grad_adjoint(z);
    const GradField gz = grad(res);
    GradField zn{z.dx - step * gz.dx, z.dy - step * gz.dy};
    auto clamp_free = [&](Image& zc, const Image& dc) {
      for (Eigen::Index j = 0; j < ww; ++j)
        for (Eigen::Index i = 0; i < hh; ++i) {
          if (std::abs(dc(i, j)) > pin_tol)
            zc(i, j) = w * sgn(dc(i, j));
          else
            zc(i, j) = std::min(w, std::max(-w, zc(i, j)));
        }
    };
    clamp_free(zn.dx, du.dx);
    clamp_free(zn.dy, du.dy);
    const double moved = field_norm(field_sub(zn, z));
    z = zn;
    const double val = (r + grad_adjoint(z)).norm();
    best = std::min(best, val);
    if (moved <= 1e-13 * std::max(1.0, field_norm(z))) break;
  }
  return best;
}

double kkt_residual(const Vec& u, const Vec& u_k, const Regularizer& reg,
                    const DenseOperator& a, const Vec& f,
                    const SolverConfig& cfg) {
  const RegEval e = reg.eval(u_k);
  if (e.h == 0.0) throw DegenerateIterateError("kkt_residual: H(u_k) = 0");
  return kkt_residual(u, u_k, reg.linear_term(u_k), 1.0 / e.h, cfg.beta, a, f,
                      cfg.lambda);
}

double kkt_residual(const Image& u, const Image& u_k, const Regularizer& reg,
                    const RadialFourierOperator& a, const KSpace& f,
                    const SolverConfig& cfg) {
  const RegEval e = reg.eval(u_k);
  if (e.h == 0.0) throw DegenerateIterateError("kkt_residual: H(u_k) = 0");
  return kkt_residual(u, u_k, reg.linear_term(u_k), 1.0 / e.h, cfg.beta, a, f,
                      cfg.lambda);
}

} // namespace qrm
