#pragma once

#include "qrm/operators.hpp"
#include "qrm/regularizer.hpp"

#include <memory>

namespace qrm {

// Soft thresholding, max(|x| - t, 0) * sign(x). t must be >= 0.
Vec shrink(const Vec& x, double t);
Image shrink(const Image& x, double t);
GradField shrink(const GradField& g, double t);

// Free-function form of DenseOperator::woodbury_solve.
Vec woodbury_solve(const DenseOperator& a, double kappa, double lambda,
                   const Vec& b);

struct InnerResult {
  int iters = 0;
  double primal_residual = 0.0; // ||u - y|| (signal) or ||grad u - y|| (image)
  double rel_change = 0.0;      // last ||u_j - u_{j-1}|| / ||u_j||
  double objective = 0.0;       // subproblem objective at the returned point
  bool converged = false;
};

// ADMM for the generalized signal subproblem
//   min_u  w ||u||_1 + (beta/2) ||u - u_ref||^2 - <h, u> + (lambda/2) ||A u - f||^2
// with consensus split u = y. beta = 0, h = 0 recovers the lasso; the outer
// flow passes w = 1/H(u^k), u_ref = u^k, h = h^k. The (y, eta) state persists
// across solve() calls for warm starting; reset() reinitializes it.
class SignalAdmm {
 public:
  SignalAdmm(const DenseOperator& a, Vec f, double lambda, double rho,
             double eps, int j_max);

  void reset(const Vec& u0); // y = u0, eta = 0
  InnerResult solve(double w, double beta, const Vec& u_ref, const Vec& h,
                    Vec& u_out);

 private:
  const DenseOperator* a_;
  Vec f_;
  double lambda_;
  double rho_;
  double eps_;
  int j_max_;
  Vec atf_; // A^T f
  Vec y_;
  Vec eta_;
};

// ADMM for the image subproblem with split y = grad u:
//   min_u  w ||grad u||_1 + (beta/2) ||u - u_ref||^2 - <h, u> + (lambda/2) ||A u - f||^2.
// The u-update inverts (lambda A^T A + rho D^T D + beta I) exactly in the
// Fourier domain.
class ImageAdmm {
 public:
  ImageAdmm(const RadialFourierOperator& a, KSpace f, double lambda,
            double rho, double eps, int j_max);

  void reset(const Image& u0); // y = grad u0, eta = 0
  InnerResult solve(double w, double beta, const Image& u_ref, const Image& h,
                    Image& u_out);

 private:
  const RadialFourierOperator* a_;
  KSpace f_;
  double lambda_;
  double rho_;
  double eps_;
  int j_max_;
  Image atf_;
  GradField y_;
  GradField eta_;
  Eigen::ArrayXXd denom_;
  double denom_beta_ = -1.0;
};

// Single-shot subproblem solves used by the outer flow's tests; cold start
// (y = u^k resp. grad u^k, eta = 0), w = 1/H(u^k) from the regularizer.
Vec solve_signal_subproblem(const Vec& u_k, const Vec& h_k,
                            const DenseOperator& a, const Vec& f,
                            const Regularizer& reg, const SolverConfig& cfg);
Image solve_image_subproblem(const Image& u_k, const Image& h_k,
                             const RadialFourierOperator& a, const KSpace& f,
                             const Regularizer& reg, const SolverConfig& cfg);

// Exact Euclidean distance from the subproblem's stationarity condition:
//   dist(g, w * subdiff ||.||_1 at u),  g = -(beta (u - u_k) - h + lambda A^T (A u - f)).
double kkt_residual(const Vec& u, const Vec& u_k, const Vec& h,
                    double w, double beta, const DenseOperator& a,
                    const Vec& f, double lambda);

// Image counterpart: min over certificates z in w * subdiff ||.||_1 at (grad u)
// of || beta (u - u_k) - h + lambda A^T (A u - f) + grad_adjoint z ||, found by
// projected gradient on z (entries on the support of grad u are pinned to
// w * sign, free entries live in [-w, w]).
double kkt_residual(const Image& u, const Image& u_k, const Image& h,
                    double w, double beta, const RadialFourierOperator& a,
                    const KSpace& f, double lambda);

// Convenience wrappers taking w = 1/H(u_k) and h = linear_term(u_k) from the
// regularizer.
double kkt_residual(const Vec& u, const Vec& u_k, const Regularizer& reg,
                    const DenseOperator& a, const Vec& f,
                    const SolverConfig& cfg);
double kkt_residual(const Image& u, const Image& u_k, const Regularizer& reg,
                    const RadialFourierOperator& a, const KSpace& f,
                    const SolverConfig& cfg);

} // namespace qrm
