#include "qrm/flow.hpp"

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

TraceRecord make_record(int k, const RegEval& e, double fid, double u_norm,
                        double au_norm, double f_norm, double rel,
                        int inner) {
  TraceRecord r;
  r.k = k;
  r.ratio = e.ratio;
  r.fidelity = fid;
  r.objective = e.ratio + fid;
  r.u_norm = u_norm;
  r.au_minus_f_norm = au_norm - f_norm;
  r.rel_change = rel;
  r.inner_iters = inner;
  return r;
}

} // namespace

SignalProblem::SignalProblem(const DenseOperator& a_in, Vec f_in)
    : a(&a_in), f(std::move(f_in)) {
  if (a->rows() < 1)
    throw std::invalid_argument("SignalProblem: operator has no measurements");
  if (f.size() != a->rows())
    throw std::invalid_argument("SignalProblem: f size mismatch");
  if (!f.allFinite())
    throw std::invalid_argument("SignalProblem: f has non-finite entries");
}

ImageProblem::ImageProblem(const RadialFourierOperator& a_in, KSpace f_in)
    : a(&a_in), f(std::move(f_in)) {
  if (f.rows() != a->height() || f.cols() != a->width())
    throw std::invalid_argument("ImageProblem: f shape mismatch");
  if (!f.allFinite())
    throw std::invalid_argument("ImageProblem: f has non-finite entries");
}

double objective(const SignalProblem& pb, const Regularizer& reg,
                 double lambda, const Vec& u) {
  const double fid = 0.5 * lambda * (pb.a->apply(u) - pb.f).squaredNorm();
  return reg.eval(u).ratio + fid;
}

double objective(const ImageProblem& pb, const Regularizer& reg,
                 double lambda, const Image& u) {
  const double fid = 0.5 * lambda * (pb.a->apply(u) - pb.f).squaredNorm();
  return reg.eval(u).ratio + fid;
}

SolveResult<Vec> qrm_solve(const SignalProblem& pb, const Regularizer& reg,
                           const SolverConfig& cfg, const Vec& u0) {
  cfg.validate(true);
  if (u0.size() != pb.a->cols())
    throw std::invalid_argument("qrm_solve: u0 size mismatch");
  if (!u0.allFinite())
    throw std::invalid_argument("qrm_solve: u0 has non-finite entries");

  const double f_norm = pb.f.norm();
  SolveResult<Vec> res;
  res.u = u0;

  Vec u = u0;
  RegEval ev = reg.eval(u);
  {
    const Vec au = pb.a->apply(u);
    res.trace.push_back(make_record(
        0, ev, 0.5 * cfg.lambda * (au - pb.f).squaredNorm(), u.norm(),
        au.norm(), f_norm, kInf, 0));
  }
  if (ev.h == 0.0) {
    res.status = SolveStatus::DegenerateIterate;
    return res;
  }

  SignalAdmm admm(*pb.a, pb.f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(u0);
  res.status = SolveStatus::MaxIterations;

  for (int k = 1; k <= cfg.k_max; ++k) {
    const Vec h = (ev.ratio / ev.h) * reg.subgradient_h(u);
    Vec u_next;
    const InnerResult ir = admm.solve(1.0 / ev.h, cfg.beta, u, h, u_next);
    const double rel = rel_change_of((u_next - u).norm(), u_next.norm());
    ev = reg.eval(u_next);
    const Vec au = pb.a->apply(u_next);
    res.trace.push_back(make_record(
        k, ev, 0.5 * cfg.lambda * (au - pb.f).squaredNorm(), u_next.norm(),
        au.norm(), f_norm, rel, ir.iters));
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

SolveResult<Image> qrm_solve(const ImageProblem& pb, const Regularizer& reg,
                             const SolverConfig& cfg, const Image& u0) {
  cfg.validate(true);
  if (u0.rows() != pb.a->height() || u0.cols() != pb.a->width())
    throw std::invalid_argument("qrm_solve: u0 shape mismatch");
  if (!u0.allFinite())
    throw std::invalid_argument("qrm_solve: u0 has non-finite entries");

  const double f_norm = pb.f.norm();
  SolveResult<Image> res;
  res.u = u0;

  Image u = u0;
  RegEval ev = reg.eval(u);
  {
    const KSpace au = pb.a->apply(u);
    res.trace.push_back(make_record(
        0, ev, 0.5 * cfg.lambda * (au - pb.f).squaredNorm(), u.norm(),
        au.norm(), f_norm, kInf, 0));
  }
  if (ev.h == 0.0) {
    res.status = SolveStatus::DegenerateIterate;
    return res;
  }

  ImageAdmm admm(*pb.a, pb.f, cfg.lambda, cfg.rho, cfg.eps, cfg.j_max);
  admm.reset(u0);
  res.status = SolveStatus::MaxIterations;

  for (int k = 1; k <= cfg.k_max; ++k) {
    const Image h = (ev.ratio / ev.h) * reg.subgradient_h(u);
    Image u_next;
    const InnerResult ir = admm.solve(1.0 / ev.h, cfg.beta, u, h, u_next);
    const double rel = rel_change_of((u_next - u).norm(), u_next.norm());
    ev = reg.eval(u_next);
    const KSpace au = pb.a->apply(u_next);
    res.trace.push_back(make_record(
        k, ev, 0.5 * cfg.lambda * (au - pb.f).squaredNorm(), u_next.norm(),
        au.norm(), f_norm, rel, ir.iters));
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

SolveResult<Vec> qrm_solve(const SignalProblem& pb, const Regularizer& reg,
                           const SolverConfig& cfg) {
  return qrm_solve(pb, reg, cfg, l1_solve(pb, 1.0, cfg).u);
}

SolveResult<Image> qrm_solve(const ImageProblem& pb, const Regularizer& reg,
                             const SolverConfig& cfg) {
  return qrm_solve(pb, reg, cfg, l1_solve(pb, 1.0, cfg).u);
}

double theorem1_threshold(const SignalProblem& pb, const Regularizer& reg) {
  const double fn2 = pb.f.squaredNorm();
  if (fn2 == 0.0)
    throw std::invalid_argument("theorem1_threshold: f must be nonzero");
  return 2.0 * reg.ratio_bound(pb.a->cols()) / fn2;
}

double theorem1_threshold(const ImageProblem& pb, const Regularizer& reg) {
  const double fn2 = pb.f.squaredNorm();
  if (fn2 == 0.0)
    throw std::invalid_argument("theorem1_threshold: f must be nonzero");
  return 2.0 * reg.ratio_bound(pb.a->height(), pb.a->width()) / fn2;
}

MonotonicityReport verify_norm_monotonicity(const SignalProblem& pb,
                                            const Regularizer& reg,
                                            const SolverConfig& cfg,
                                            const Vec& u0, double above_scale,
                                            double below_scale) {
  if (!(above_scale > 1.0) || !(below_scale > 0.0) || !(below_scale < 1.0))
    throw std::invalid_argument(
        "verify_norm_monotonicity: need above_scale > 1 > below_scale > 0");
  MonotonicityReport rep;
  rep.f_norm = pb.f.norm();
  if (rep.f_norm == 0.0)
    throw std::invalid_argument("verify_norm_monotonicity: f must be nonzero");
  const double au0 = pb.a->apply(u0).norm();
  if (au0 == 0.0)
    throw std::invalid_argument(
        "verify_norm_monotonicity: A u0 must be nonzero");

  auto run_case = [&](double scale) {
    MonotonicityCase c;
    const Vec u0c = u0 * (scale * rep.f_norm / au0);
    c.au0_norm = pb.a->apply(u0c).norm();
    c.result = qrm_solve(pb, reg, cfg, u0c);
    const auto& tr = c.result.trace;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      const bool above_f = tr[i].au_minus_f_norm >= 0.0;
      const bool grew = tr[i].u_norm > tr[i - 1].u_norm * (1.0 + 1e-9);
      if (above_f && grew) c.flagged.push_back(tr[i].k);
    }
    return c;
  };
  rep.above = run_case(above_scale);
  rep.below = run_case(below_scale);
  return rep;
}

} // namespace qrm
