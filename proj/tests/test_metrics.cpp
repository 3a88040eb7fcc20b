#include "doctest.h"

#include <qrm/datagen.hpp>
#include <qrm/metrics.hpp>
#include <qrm/rng.hpp>

#include <cmath>

using namespace qrm;

TEST_CASE("mse is the plain sum of squared errors") {
  Vec a(3), b(3);
  a << 1, 2, 3;
  b << 1, 2, 3;
  CHECK(mse(a, b) == 0.0);
  a << 2, 2, 3;
  CHECK(mse(a, b) == 1.0);
  a << 2, 0, 5;
  CHECK(mse(a, b) == doctest::Approx(1.0 + 4.0 + 4.0));
  CHECK_THROWS_AS(mse(Vec::Zero(2), b), std::invalid_argument);

  Image m = Image::Zero(2, 2), w = Image::Ones(2, 2);
  CHECK(mse(m, w) == doctest::Approx(4.0));
}

TEST_CASE("oracle error with orthonormal support columns is sigma^2 times s") {
  const DenseOperator id(Eigen::MatrixXd::Identity(200, 200));
  std::vector<int> sup(130);
  for (int i = 0; i < 130; ++i) sup[i] = i;
  CHECK(oracle_mse(id, sup, 0.1) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("oracle error validates its inputs") {
  const DenseOperator a = gen_gaussian_matrix(10, 20, 3);
  CHECK_THROWS_AS(oracle_mse(a, {}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(oracle_mse(a, {0, 25}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(oracle_mse(a, {0}, -0.1), std::invalid_argument);
  // Duplicated column makes the support Gram singular.
  Eigen::MatrixXd dup(4, 2);
  dup.col(0) << 1, 0, 1, 0;
  dup.col(1) = dup.col(0);
  CHECK_THROWS_AS(oracle_mse(DenseOperator(dup), {0, 1}, 0.1),
                  std::runtime_error);
}

TEST_CASE("oracle error matches monte carlo least squares") {
  const int m = 40, n = 60;
  const DenseOperator a = gen_gaussian_matrix(m, n, 555);
  const std::vector<int> sup = {3, 7, 21, 40, 55};
  const double sigma = 0.2;
  const double predicted = oracle_mse(a, sup, sigma);

  Eigen::MatrixXd as(m, int(sup.size()));
  for (int c = 0; c < int(sup.size()); ++c) as.col(c) = a.matrix().col(sup[c]);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(as);

  CounterRng rng(556);
  const int draws = 10000;
  double acc = 0.0;
  for (int t = 0; t < draws; ++t) {
    Vec noise(m);
    for (int i = 0; i < m; ++i) noise[i] = sigma * rng.next_normal();
    // OLS recovery error on the true support is (A_S^+ noise).
    acc += qr.solve(noise).squaredNorm();
  }
  const double mc = acc / draws;
  CHECK(std::abs(mc - predicted) <= 0.03 * predicted);
}

TEST_CASE("relative error and psnr identities") {
  Vec t(4);
  t << 0.5, 1.0, 0.25, 0.0;

  const RePsnr exact = re_psnr(t, t);
  CHECK(exact.re == 0.0);
  CHECK(exact.psnr == kPsnrCap);

  const RePsnr zero = re_psnr(Vec::Zero(4), t);
  CHECK(zero.re == doctest::Approx(1.0));

  Vec e(4);
  e << 0.1, -0.05, 0.0, 0.2;
  const RePsnr one = re_psnr(Vec(t + e), t);
  const RePsnr two = re_psnr(Vec(t + 2.0 * e), t);
  CHECK(one.psnr - two.psnr == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-9));
  CHECK(one.psnr - two.psnr == doctest::Approx(6.0206).epsilon(1e-4));
  CHECK(two.re == doctest::Approx(2.0 * one.re).epsilon(1e-12));

  CHECK_THROWS_AS(re_psnr(t, Vec::Zero(4)), std::invalid_argument);
  Vec neg(2);
  neg << -1.0, -2.0; // nonzero but with a non-positive peak
  CHECK_THROWS_AS(re_psnr(Vec::Zero(2), neg), std::invalid_argument);

  // The image overload sees the same numbers as the flattened vectors.
  Image it(2, 2), is(2, 2);
  it << 0.5, 1.0, 0.25, 0.0;
  is << 0.6, 0.95, 0.25, 0.2;
  const RePsnr imaged = re_psnr(is, it);
  Vec vt = Eigen::Map<const Vec>(it.data(), 4);
  Vec vs = Eigen::Map<const Vec>(is.data(), 4);
  const RePsnr flat = re_psnr(vs, vt);
  CHECK(imaged.re == flat.re);
  CHECK(imaged.psnr == flat.psnr);
}
