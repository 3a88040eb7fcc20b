#include "qrm/types.hpp"

namespace qrm {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::DegenerateIterate: return "degenerate_iterate";
  }
  return "unknown";
}

void SolverConfig::validate(bool allow_zero_lambda) const {
  if (!(beta > 0.0)) throw std::invalid_argument("config: beta must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("config: rho must be > 0");
  if (allow_zero_lambda) {
    if (!(lambda >= 0.0))
      throw std::invalid_argument("config: lambda must be >= 0");
  } else if (!(lambda > 0.0)) {
    throw std::invalid_argument("config: lambda must be > 0");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("config: eps must be > 0");
  if (k_max < 1) throw std::invalid_argument("config: k_max must be >= 1");
  if (j_max < 1) throw std::invalid_argument("config: j_max must be >= 1");
  if (K < 0) throw std::invalid_argument("config: K must be >= 0");
}

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const Image& m) { return m.allFinite(); }

} // namespace qrm
