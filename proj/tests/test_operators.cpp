#include "doctest.h"

#include <qrm/operators.hpp>
#include <qrm/io.hpp>
#include <qrm/rng.hpp>

#include "support/oracles.hpp"

#include <cmath>
#include <complex>

using namespace qrm;

#ifndef QRM_FIXTURES_DIR
#define QRM_FIXTURES_DIR "."
#endif

namespace {

Eigen::MatrixXd random_matrix(int m, int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::MatrixXd a(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) a(i, j) = rng.next_normal();
  return a;
}

Image random_image(int h, int w, std::uint64_t seed) {
  CounterRng rng(seed);
  Image m(h, w);
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < h; ++i) m(i, j) = rng.next_normal();
  return m;
}

} // namespace

TEST_CASE("dense identity operator is the identity") {
  const DenseOperator a(Eigen::MatrixXd::Identity(2, 2));
  Vec u(2);
  u << 1, 2;
  CHECK((a.apply(u) - u).norm() == 0.0);
  CHECK((a.apply_adjoint(u) - u).norm() == 0.0);
}

TEST_CASE("dense apply matches a naive nested-loop product") {
  const Eigen::MatrixXd m = random_matrix(5, 8, 31);
  const DenseOperator a(m);
  CounterRng rng(32);
  for (int c = 0; c < 50; ++c) {
    Vec u(8);
    for (int i = 0; i < 8; ++i) u[i] = rng.next_normal();
    const Vec ref = oracles::naive_apply(m, u);
    CHECK((a.apply(u) - ref).norm() <= 1e-13 * std::max(1.0, ref.norm()));
    Vec r(5);
    for (int i = 0; i < 5; ++i) r[i] = rng.next_normal();
    const Vec refT = oracles::naive_apply(m.transpose(), r);
    CHECK((a.apply_adjoint(r) - refT).norm() <=
          1e-13 * std::max(1.0, refT.norm()));
  }
}

TEST_CASE("dense operator rejects empty and non-finite matrices") {
  CHECK_THROWS_AS(DenseOperator(Eigen::MatrixXd(0, 3)), std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(DenseOperator{bad}, std::invalid_argument);
  CHECK_NOTHROW(DenseOperator(Eigen::MatrixXd::Zero(1, 2))); // zero is valid
}

TEST_CASE("woodbury solve on the zero matrix is scaling by kappa") {
  const DenseOperator a(Eigen::MatrixXd::Zero(3, 6));
  Vec b(6);
  b << 1, -2, 3, -4, 5, -6;
  const Vec x = a.woodbury_solve(4.0, 0.25, b);
  CHECK((x - 0.25 * b).norm() <= 1e-14);
}

TEST_CASE("woodbury solve matches dense elimination on a 4x10 instance") {
  const Eigen::MatrixXd m = random_matrix(4, 10, 88);
  const DenseOperator a(m);
  CounterRng rng(89);
  Vec b(10);
  for (int i = 0; i < 10; ++i) b[i] = rng.next_normal();
  const double lambda = 3.0, kappa = 1.0 / 7.0;
  Eigen::MatrixXd big = lambda * (m.transpose() * m);
  big.diagonal().array() += 1.0 / kappa;
  const Vec ref = oracles::gauss_solve(big, b);
  const Vec x = a.woodbury_solve(lambda, kappa, b);
  CHECK((x - ref).norm() <= 1e-10 * ref.norm());
}

TEST_CASE("woodbury residuals stay at solver precision across 100 instances") {
  CounterRng rng(4004);
  for (int c = 0; c < 100; ++c) {
    const int m = 2 + static_cast<int>(rng.next_uniform() * 6);
    const int n = m + static_cast<int>(rng.next_uniform() * 20);
    const Eigen::MatrixXd mat = random_matrix(m, n, rng.next_u64());
    const DenseOperator a(mat);
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = rng.next_normal();
    const double lambda = 0.1 + 50.0 * rng.next_uniform();
    const double kappa = 1.0 / (1.0 + 10.0 * rng.next_uniform());
    const Vec x = a.woodbury_solve(lambda, kappa, b);
    const Vec resid =
        lambda * (mat.transpose() * (mat * x)) + x / kappa - b;
    CHECK(resid.norm() <= 1e-10 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("factor cache registers prepared systems") {
  const DenseOperator a(random_matrix(3, 5, 5));
  CHECK_FALSE(a.has_factor(2.0, 0.5));
  a.prepare_factor(2.0, 0.5);
  CHECK(a.has_factor(2.0, 0.5));
  CHECK_FALSE(a.has_factor(2.0, 0.25));
  CHECK_THROWS_AS(a.prepare_factor(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(a.prepare_factor(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("orthonormal fft matches a direct transform and inverts exactly") {
  const int h = 4, w = 6;
  const Fft2 fft(h, w);
  const Image u = random_image(h, w, 808);
  const KSpace v = fft.forward(u);

  // Direct O(N^2) transform with frequency k1 over rows, k2 over columns.
  const std::complex<double> minus_i(0.0, -1.0);
  for (int k1 = 0; k1 < h; ++k1)
    for (int k2 = 0; k2 < w; ++k2) {
      std::complex<double> acc(0.0, 0.0);
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
          acc += u(i, j) * std::exp(minus_i * (2.0 * M_PI) *
                                    (double(k1) * i / h + double(k2) * j / w));
      acc /= std::sqrt(double(h) * w);
      CHECK(std::abs(v(k1, k2) - acc) <= 1e-12);
    }

  CHECK((fft.inverse(v).real() - u).norm() <= 1e-12 * u.norm());
  CHECK(std::abs(v.norm() - u.norm()) <= 1e-12 * u.norm()); // unitary
}

TEST_CASE("all-frequency sampling is norm preserving and self-inverting") {
  Mask all = Mask::Constant(8, 8, true);
  const RadialFourierOperator op(std::move(all));
  const Image u = random_image(8, 8, 17);
  CHECK(std::abs(op.apply(u).norm() - u.norm()) <= 1e-12 * u.norm());
  const Image rt = op.apply_adjoint(op.apply(u));
  CHECK((rt - u).norm() <= 1e-12 * u.norm());
}

TEST_CASE("masked fourier operator rejects bad masks") {
  Mask no_dc = Mask::Constant(4, 4, true);
  no_dc(0, 0) = false;
  CHECK_THROWS_AS(RadialFourierOperator(std::move(no_dc)),
                  std::invalid_argument);
  Mask asym = Mask::Constant(4, 4, false);
  asym(0, 0) = true;
  asym(1, 2) = true; // negation partner (3,2) missing
  CHECK_THROWS_AS(RadialFourierOperator(std::move(asym)),
                  std::invalid_argument);
}

TEST_CASE("adjoint identity holds for the masked fourier operator") {
  const RadialFourierOperator op(radial_mask(12, 10, 4));
  CounterRng rng(3030);
  for (int c = 0; c < 100; ++c) {
    const Image x = random_image(12, 10, rng.next_u64());
    KSpace y(12, 10);
    for (int j = 0; j < 10; ++j)
      for (int i = 0; i < 12; ++i)
        y(i, j) = std::complex<double>(rng.next_normal(), rng.next_normal());
    const double lhs =
        (op.apply(x).conjugate().array() * y.array()).sum().real();
    const double rhs = (x.array() * op.apply_adjoint(y).array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, x.norm() * y.norm()));
  }
}

TEST_CASE("gradient of a step image and of constants") {
  Image u(2, 2);
  u << 0, 1, 0, 1;
  const GradField g = grad(u);
  CHECK(g.dx(0, 0) == 1.0);
  CHECK(g.dx(0, 1) == -1.0);
  CHECK(g.dx(1, 0) == 1.0);
  CHECK(g.dx(1, 1) == -1.0);
  CHECK(g.dy.cwiseAbs().maxCoeff() == 0.0);

  const GradField gc = grad(Image::Constant(5, 7, 2.5));
  CHECK(gc.dx.cwiseAbs().maxCoeff() == 0.0);
  CHECK(gc.dy.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("discrete gradient adjoint identity on 7x5 grids") {
  CounterRng rng(66);
  for (int c = 0; c < 100; ++c) {
    const Image u = random_image(7, 5, rng.next_u64());
    const GradField g{random_image(7, 5, rng.next_u64()),
                      random_image(7, 5, rng.next_u64())};
    const GradField du = grad(u);
    const double lhs = (du.dx.array() * g.dx.array()).sum() +
                       (du.dy.array() * g.dy.array()).sum();
    const double rhs = (u.array() * grad_adjoint(g).array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("gradient operators match their dense matrix form") {
  const int h = 4, w = 4;
  const Eigen::MatrixXd d = oracles::grad_matrix(h, w);
  const Image u = random_image(h, w, 505);
  const GradField g = grad(u);
  const Vec dv = oracles::naive_apply(d, oracles::vec_of(u));
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < h; ++i) {
      CHECK(g.dx(i, j) == doctest::Approx(dv[i + h * j]).epsilon(1e-14));
      CHECK(g.dy(i, j) == doctest::Approx(dv[h * w + i + h * j]).epsilon(1e-14));
    }
}

TEST_CASE("single-line radial mask is one diameter plus the dc sample") {
  const Mask m = radial_mask(64, 64, 1);
  CHECK(m(0, 0));
  int count = 0;
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i)
      if (m(i, j)) ++count;
  CHECK(count == 64); // a full row of frequencies
  for (int j = 0; j < 64; ++j) CHECK(m(0, j));
}

TEST_CASE("radial masks are symmetric, deterministic, and bounded") {
  const Mask a = radial_mask(64, 64, 10);
  const Mask b = radial_mask(64, 64, 10);
  CHECK((a == b).all());
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i)
      CHECK(a(i, j) == a((64 - i) % 64, (64 - j) % 64));
  const double frac = double(a.count()) / (64.0 * 64.0);
  CHECK(frac > 0.0);
  CHECK(frac < 1.0);
  // Dense limit stays a valid sampling fraction.
  const Mask dense = radial_mask(32, 32, 32);
  CHECK(double(dense.count()) / (32.0 * 32.0) <= 1.0);
}

TEST_CASE("radial masks match the reference rasterizer fixtures") {
  const Mask got10 = radial_mask(64, 64, 10);
  const Mask ref10 =
      read_pbm(std::string(QRM_FIXTURES_DIR) + "/radial_mask_64x64_10.pbm");
  REQUIRE(ref10.rows() == 64);
  REQUIRE(ref10.cols() == 64);
  CHECK((got10 == ref10).all());

  const Mask got7 = radial_mask(48, 64, 7);
  const Mask ref7 =
      read_pbm(std::string(QRM_FIXTURES_DIR) + "/radial_mask_48x64_7.pbm");
  CHECK((got7 == ref7).all());
}

TEST_CASE("spectral denominator formula and exact solve property") {
  const RadialFourierOperator op(radial_mask(8, 8, 3));
  const double rho = 2.0, beta = 0.5, lambda = 10.0;
  const Eigen::ArrayXXd d = spectral_denominator(op, rho, beta, lambda);
  CHECK(d(0, 0) == doctest::Approx(lambda + beta).epsilon(1e-15));
  CHECK((d >= beta).all());

  // Applying the forward quadratic operator after the spectral solve must
  // reproduce the right-hand side.
  const Image b = random_image(8, 8, 99);
  KSpace spec = op.fft().forward(b);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i) spec(i, j) /= d(i, j);
  const Image x = op.fft().inverse(spec).real();
  const GradField gx = grad(x);
  const Image forward = lambda * op.apply_adjoint(op.apply(x)) +
                        rho * grad_adjoint(gx) + beta * x;
  CHECK((forward - b).norm() <= 1e-10 * b.norm());
}

TEST_CASE("spectral solve equals the dense 64x64 solve") {
  double worst = 0.0;
  const int bad = oracles::sweep_spectral_dense(60, 321, &worst);
  CHECK(bad == 0);
  CHECK(worst <= 1e-9);
}
