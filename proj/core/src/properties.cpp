#include "qrm/properties.hpp"

#include "qrm/rng.hpp"

#include <cmath>

namespace qrm {

namespace {

Vec random_vec(CounterRng& rng, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.next_normal();
  return v;
}

Image random_image(CounterRng& rng, int h, int w) {
  Image m(h, w);
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < h; ++i) m(i, j) = rng.next_normal();
  return m;
}

void tally(PropertyCheck& pc, double err, double tol) {
  pc.worst = std::max(pc.worst, err);
  if (!(err <= tol)) ++pc.violations;
}

} // namespace

PropertyCheck check_subgradient_identities(const Regularizer& reg, int n_or_h,
                                           int w, int cases,
                                           std::uint64_t seed) {
  PropertyCheck pc;
  pc.name = "subgradient_identities_" + reg.name();
  pc.cases = cases;
  CounterRng rng(seed);
  const bool image = reg.kind() == RegKind::GradL1OverL2;
  for (int c = 0; c < cases; ++c) {
    if (image) {
      const Image u = random_image(rng, n_or_h, w);
      const Image v = random_image(rng, n_or_h, w);
      const RegEval eu = reg.eval(u);
      const Image q = reg.subgradient_h(u);
      const Image p = reg.subgradient_j(u);
      const double qu = (q.array() * u.array()).sum();
      const double pu = (p.array() * u.array()).sum();
      tally(pc, std::abs(qu - eu.h) / std::max(eu.h, 1e-300), 1e-12);
      tally(pc, std::abs(pu - eu.j) / std::max(eu.j, 1e-300), 1e-12);
      const RegEval ev = reg.eval(v);
      const double qv = (q.array() * v.array()).sum();
      const double pv = (p.array() * v.array()).sum();
      const double vn = v.norm();
      tally(pc, (qv - ev.h) / std::max(vn, 1e-300), 1e-12);
      tally(pc, (pv - ev.j) / std::max(vn, 1e-300), 1e-12);
    } else {
      const Vec u = random_vec(rng, n_or_h);
      const Vec v = random_vec(rng, n_or_h);
      const RegEval eu = reg.eval(u);
      const Vec q = reg.subgradient_h(u);
      const Vec p = reg.subgradient_j(u);
      tally(pc, std::abs(q.dot(u) - eu.h) / std::max(eu.h, 1e-300), 1e-12);
      tally(pc, std::abs(p.dot(u) - eu.j) / std::max(eu.j, 1e-300), 1e-12);
      const RegEval ev = reg.eval(v);
      const double vn = v.norm();
      tally(pc, (q.dot(v) - ev.h) / std::max(vn, 1e-300), 1e-12);
      tally(pc, (p.dot(v) - ev.j) / std::max(vn, 1e-300), 1e-12);
    }
  }
  return pc;
}

PropertyCheck check_homogeneity(const Regularizer& reg, int n_or_h, int w,
                                int cases, std::uint64_t seed) {
  PropertyCheck pc;
  pc.name = "one_homogeneity_" + reg.name();
  pc.cases = cases;
  CounterRng rng(seed);
  const bool image = reg.kind() == RegKind::GradL1OverL2;
  for (int c = 0; c < cases; ++c) {
    double alpha = -10.0 + 20.0 * rng.next_uniform();
    if (std::abs(alpha) < 1e-3) alpha = 1e-3; // keep the scale test meaningful
    const double aa = std::abs(alpha);
    RegEval e1, e2;
    if (image) {
      const Image u = random_image(rng, n_or_h, w);
      e1 = reg.eval(u);
      e2 = reg.eval(Image(alpha * u));
    } else {
      const Vec u = random_vec(rng, n_or_h);
      e1 = reg.eval(u);
      e2 = reg.eval(Vec(alpha * u));
    }
    tally(pc, std::abs(e2.j - aa * e1.j) / std::max(aa * e1.j, 1e-300), 1e-12);
    tally(pc, std::abs(e2.h - aa * e1.h) / std::max(aa * e1.h, 1e-300), 1e-12);
    tally(pc, std::abs(e2.ratio - e1.ratio) / std::max(e1.ratio, 1e-300),
          1e-12);
  }
  return pc;
}

PropertyCheck check_adjoint(const DenseOperator& a, int cases,
                            std::uint64_t seed) {
  PropertyCheck pc;
  pc.name = "adjoint_dense";
  pc.cases = cases;
  CounterRng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const Vec x = random_vec(rng, a.cols());
    const Vec y = random_vec(rng, a.rows());
    const double lhs = a.apply(x).dot(y);
    const double rhs = x.dot(a.apply_adjoint(y));
    const double scale = std::max(x.norm() * y.norm(), 1e-300);
    tally(pc, std::abs(lhs - rhs) / scale, 1e-11);
  }
  return pc;
}

PropertyCheck check_adjoint(const RadialFourierOperator& a, int cases,
                            std::uint64_t seed) {
  PropertyCheck pc;
  pc.name = "adjoint_fourier";
  pc.cases = cases;
  CounterRng rng(seed);
  const int h = a.height(), w = a.width();
  for (int c = 0; c < cases; ++c) {
    const Image x = random_image(rng, h, w);
    KSpace y(h, w);
    for (int j = 0; j < w; ++j)
      for (int i = 0; i < h; ++i)
        y(i, j) = std::complex<double>(rng.next_normal(), rng.next_normal());
    // Real part of the complex pairing matches the real-domain pairing.
    const double lhs = (a.apply(x).conjugate().array() * y.array()).sum().real();
    const double rhs = (x.array() * a.apply_adjoint(y).array()).sum();
    const double scale = std::max(x.norm() * y.norm(), 1e-300);
    tally(pc, std::abs(lhs - rhs) / scale, 1e-11);
  }
  return pc;
}

PropertyCheck check_grad_adjoint(int height, int width, int cases,
                                 std::uint64_t seed) {
  PropertyCheck pc;
  pc.name = "adjoint_grad";
  pc.cases = cases;
  CounterRng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const Image u = random_image(rng, height, width);
    const GradField g{random_image(rng, height, width),
                      random_image(rng, height, width)};
    const GradField du = grad(u);
    const double lhs =
        (du.dx.array() * g.dx.array()).sum() + (du.dy.array() * g.dy.array()).sum();
    const double rhs = (u.array() * grad_adjoint(g).array()).sum();
    const double scale =
        std::max(u.norm() * std::sqrt(g.dx.squaredNorm() + g.dy.squaredNorm()),
                 1e-300);
    tally(pc, std::abs(lhs - rhs) / scale, 1e-11);
  }
  return pc;
}

} // namespace qrm
