#pragma once

#include <cstdint>

namespace qrm {

// Counter-based deterministic generator. The raw stream is
//   x_i = mix64(seed + (i+1) * 0x9E3779B97F4A7C15)
// where mix64 is the splitmix64 finalizer. Uniforms take the top 53 bits,
// normals come from an explicit Box-Muller pair so the stream is identical
// on every platform (std::normal_distribution is implementation-defined and
// is deliberately not used anywhere).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  // Independent child stream for a tagged purpose (matrix/signal/noise...).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag + 0x9E3779B97F4A7C15ULL));
  }

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double next_normal();

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace qrm
