#include <benchmark/benchmark.h>

#include <qrm/admm.hpp>
#include <qrm/datagen.hpp>
#include <qrm/operators.hpp>
#include <qrm/regularizer.hpp>
#include <qrm/rng.hpp>

using namespace qrm;

namespace {

Vec random_vec(int n, std::uint64_t seed) {
  CounterRng rng(seed);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.next_normal();
  return v;
}

Image random_image(int h, int w, std::uint64_t seed) {
  CounterRng rng(seed);
  Image m(h, w);
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < h; ++i) m(i, j) = rng.next_normal();
  return m;
}

void BM_ShrinkVector(benchmark::State& state) {
  const Vec v = random_vec(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(shrink(v, 0.3));
}
BENCHMARK(BM_ShrinkVector)->Arg(512)->Arg(65536);

void BM_WoodburySolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  DenseOperator a = gen_gaussian_matrix(m, 512, 2);
  const Vec b = random_vec(512, 3);
  const double lambda = 8.0, kappa = 1.0 / 11.0;
  a.prepare_factor(lambda, kappa);
  for (auto _ : state)
    benchmark::DoNotOptimize(a.woodbury_solve(lambda, kappa, b));
}
BENCHMARK(BM_WoodburySolve)->Arg(240)->Arg(360);

void BM_Fft2Roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fft2 fft(n, n);
  const Image u = random_image(n, n, 4);
  for (auto _ : state) {
    const KSpace k = fft.forward(u);
    benchmark::DoNotOptimize(fft.inverse(k));
  }
}
BENCHMARK(BM_Fft2Roundtrip)->Arg(64)->Arg(256);

void BM_GradAdjointPair(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Image u = random_image(n, n, 5);
  for (auto _ : state) {
    const GradField g = grad(u);
    benchmark::DoNotOptimize(grad_adjoint(g));
  }
}
BENCHMARK(BM_GradAdjointPair)->Arg(64)->Arg(256);

void BM_SignalSubproblem(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DenseOperator a = gen_gaussian_matrix(m, 512, 6);
  const Vec u_true = gen_sparse_signal(512, 130, 7);
  const Vec f = add_noise(a.apply(u_true), 0.1, 8);
  const Regularizer reg = Regularizer::l1_over_l2();
  SolverConfig cfg;
  cfg.lambda = 1000.0 / f.squaredNorm();
  cfg.j_max = 200;
  const Vec u_k = a.apply_adjoint(f);
  const Vec h_k = reg.linear_term(u_k);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve_signal_subproblem(u_k, h_k, a, f, reg, cfg));
}
BENCHMARK(BM_SignalSubproblem)->Arg(300);

void BM_SpectralImageUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RadialFourierOperator op(radial_mask(n, n, 10));
  const Eigen::ArrayXXd denom = spectral_denominator(op, 4.0, 1.0, 50.0);
  const Image rhs = random_image(n, n, 9);
  for (auto _ : state) {
    const KSpace k = op.fft().forward(rhs);
    benchmark::DoNotOptimize(op.fft().inverse(KSpace(k.array() / denom)));
  }
}
BENCHMARK(BM_SpectralImageUpdate)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
