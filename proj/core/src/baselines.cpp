#include "qrm/baselines.hpp"

#include <cmath>
#include <limits>

namespace qrm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_change_of(double diff_norm, double new_norm) {
  if (new_norm > 0.0) return diff_norm / new_norm;
  return diff_norm > 0.0 ? kInf : 0.0;
}

} // namespace

SolveResult<Vec> l1_solve(const SignalProblem& pb, double mu,
                          const SolverConfig& cfg) {
  if (!(mu > 0.0)) throw std::invalid_argument("l1_solve: mu must be > 0");
  cfg.validate();
  const int n = pb.a->cols();
  const double f_norm = pb.f.norm();

  SolveResult<Vec> res;
  const Vec zero = Vec::Zero(n);

  TraceRecord r0;
  r0.k = 0;
  r0.ratio = 0.0;
  r0.fidelity = 0.5 * cfg.lambda * pb.f.squaredNorm();
  r0.objective = r0.fidelity;
  r0.u_norm = 0.0;
  r0.au_minus_f_norm = -f_norm;
  r0.rel_change = kInf;
  res.trace.push_back(r0);

  SignalAdmm admm(*pb.a, pb.f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(zero);
  Vec u;
  const InnerResult ir = admm.solve(mu, 0.0, zero, zero, u);

  const Vec au = pb.a->apply(u);
  TraceRecord r1;
  r1.k = 1;
  r1.ratio = mu * u.lpNorm<1>();
  r1.fidelity = 0.5 * cfg.lambda * (au - pb.f).squaredNorm();
  r1.objective = r1.ratio + r1.fidelity;
  r1.u_norm = u.norm();
  r1.au_minus_f_norm = au.norm() - f_norm;
  r1.rel_change = ir.rel_change;
  r1.inner_iters = ir.iters;
  res.trace.push_back(r1);

  res.u = std::move(u);
  res.status = ir.converged ? SolveStatus::Converged : SolveStatus::MaxIterations;
  return res;
}

SolveResult<Image> l1_solve(const ImageProblem& pb, double mu,
                            const SolverConfig& cfg) {
  if (!(mu > 0.0)) throw std::invalid_argument("l1_solve: mu must be > 0");
  cfg.validate();
  const int hh = pb.a->height(), ww = pb.a->width();
  const double f_norm = pb.f.norm();

  SolveResult<Image> res;
  const Image zero = Image::Zero(hh, ww);

  TraceRecord r0;
  r0.k = 0;
  r0.ratio = 0.0;
  r0.fidelity = 0.5 * cfg.lambda * pb.f.squaredNorm();
  r0.objective = r0.fidelity;
  r0.u_norm = 0.0;
  r0.au_minus_f_norm = -f_norm;
  r0.rel_change = kInf;
  res.trace.push_back(r0);

  ImageAdmm admm(*pb.a, pb.f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(zero);
  Image u;
  const InnerResult ir = admm.solve(mu, 0.0, zero, zero, u);

  const KSpace au = pb.a->apply(u);
  const GradField g = grad(u);
  TraceRecord r1;
  r1.k = 1;
  r1.ratio = mu * (g.dx.cwiseAbs().sum() + g.dy.cwiseAbs().sum());
  r1.fidelity = 0.5 * cfg.lambda * (au - pb.f).squaredNorm();
  r1.objective = r1.ratio + r1.fidelity;
  r1.u_norm = u.norm();
  r1.au_minus_f_norm = au.norm() - f_norm;
  r1.rel_change = ir.rel_change;
  r1.inner_iters = ir.iters;
  res.trace.push_back(r1);

  res.u = std::move(u);
  res.status = ir.converged ? SolveStatus::Converged : SolveStatus::MaxIterations;
  return res;
}

SolveResult<Vec> dca_solve(const SignalProblem& pb, const Regularizer& reg,
                           double mu, const SolverConfig& cfg, const Vec& u0) {
  if (!(mu > 0.0)) throw std::invalid_argument("dca_solve: mu must be > 0");
  cfg.validate();
  if (u0.size() != pb.a->cols())
    throw std::invalid_argument("dca_solve: u0 size mismatch");
  if (!u0.allFinite())
    throw std::invalid_argument("dca_solve: u0 has non-finite entries");

  const int n = pb.a->cols();
  const double f_norm = pb.f.norm();
  const Vec zero = Vec::Zero(n);

  SolveResult<Vec> res;
  res.u = u0;

  Vec u = u0;
  RegEval ev = reg.eval(u);
  {
    const Vec au = pb.a->apply(u);
    TraceRecord r0;
    r0.k = 0;
    r0.ratio = ev.ratio;
    r0.fidelity = 0.5 * cfg.lambda * (au - pb.f).squaredNorm();
    r0.objective = r0.ratio + r0.fidelity;
    r0.u_norm = u.norm();
    r0.au_minus_f_norm = au.norm() - f_norm;
    r0.rel_change = kInf;
    res.trace.push_back(r0);
  }
  if (ev.h == 0.0) {
    res.status = SolveStatus::DegenerateIterate;
    return res;
  }

  SignalAdmm admm(*pb.a, pb.f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(u0);
  res.status = SolveStatus::MaxIterations;

  for (int k = 1; k <= cfg.k_max; ++k) {
    const Vec s = reg.subgradient_j(u);
    const Vec q = reg.subgradient_h(u);
    const Vec v = mu * s - (s - ev.ratio * q) / ev.h;
    Vec u_next;
    const InnerResult ir = admm.solve(mu, 0.0, zero, v, u_next);
    const double rel = rel_change_of((u_next - u).norm(), u_next.norm());
    ev = reg.eval(u_next);
    const Vec au = pb.a->apply(u_next);
    TraceRecord r;
    r.k = k;
    r.ratio = ev.ratio;
    r.fidelity = 0.5 * cfg.lambda * (au - pb.f).squaredNorm();
    r.objective = r.ratio + r.fidelity;
    r.u_norm = u_next.norm();
    r.au_minus_f_norm = au.norm() - f_norm;
    r.rel_change = rel;
    r.inner_iters = ir.iters;
    res.trace.push_back(r);
    u = u_next;
    if (ev.h == 0.0) {
      res.status = SolveStatus::DegenerateIterate;
      break;
    }
    if (rel <= cfg.eps) {
      res.status = SolveStatus::Converged;
      break;
    }
  }
  res.u = u;
  return res;
}

SolveResult<Vec> dca_solve(const SignalProblem& pb, const Regularizer& reg,
                           double mu, const SolverConfig& cfg) {
  return dca_solve(pb, reg, mu, cfg, l1_solve(pb, 1.0, cfg).u);
}

} // namespace qrm
