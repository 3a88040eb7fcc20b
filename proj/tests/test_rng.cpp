#include "doctest.h"

#include <qrm/rng.hpp>

#include <cmath>

using qrm::CounterRng;

TEST_CASE("same seed reproduces the stream, different seeds do not") {
  CounterRng a(42), b(42), c(43);
  bool all_eq = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    const auto xa = a.next_u64(), xb = b.next_u64(), xc = c.next_u64();
    all_eq = all_eq && xa == xb;
    any_diff = any_diff || xa != xc;
  }
  CHECK(all_eq);
  CHECK(any_diff);
}

TEST_CASE("stream is a pure function of the counter") {
  CounterRng a(7);
  for (int i = 0; i < 5; ++i) a.next_u64();
  CounterRng b(7);
  std::uint64_t skipped = 0;
  for (int i = 0; i < 6; ++i) skipped = b.next_u64();
  CHECK(a.next_u64() == skipped);
}

TEST_CASE("mix64 fixed point at zero and dispersion on neighbors") {
  CHECK(CounterRng::mix64(0) == 0);
  // Neighboring inputs decorrelate: count differing bits between outputs.
  const std::uint64_t d = CounterRng::mix64(1) ^ CounterRng::mix64(2);
  int bits = 0;
  for (int i = 0; i < 64; ++i) bits += (d >> i) & 1;
  CHECK(bits > 10);
}

TEST_CASE("derive gives distinct child streams") {
  const std::uint64_t s = 99;
  CHECK(CounterRng::derive(s, 1) != CounterRng::derive(s, 2));
  CHECK(CounterRng::derive(s, 1) != CounterRng::derive(s + 1, 1));
  CHECK(CounterRng::derive(s, 1) == CounterRng::derive(s, 1));
}

TEST_CASE("uniforms live in [0,1) with 53-bit resolution and correct moments") {
  CounterRng rng(2024);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double scaled = u * 9007199254740992.0; // 2^53
    CHECK(scaled == std::floor(scaled));
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.005);
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("normals have the right moments and tail mass") {
  CounterRng rng(5150);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  int within1 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    sum += z;
    sumsq += z * z;
    if (std::abs(z) < 1.0) ++within1;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sumsq / n - mean * mean);
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(sd - 1.0) < 0.01);
  CHECK(std::abs(within1 / static_cast<double>(n) - 0.6827) < 0.01);
}
