#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrm {

using Vec = Eigen::VectorXd;
using Image = Eigen::MatrixXd;   // H x W, (i,j) = (row, column)
using KSpace = Eigen::MatrixXcd; // H x W frequency samples, zero off the sampling mask
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Forward differences with periodic wrap, one component per axis.
struct GradField {
  Image dx; // along width:  u(i, j+1) - u(i, j)
  Image dy; // along height: u(i+1, j) - u(i, j)
};

enum class SolveStatus {
  Converged,        // relative change fell below eps
  MaxIterations,    // iteration cap reached first
  DegenerateIterate // H(u^k) hit zero; partial trace returned
};

const char* to_string(SolveStatus s);

// Raised when a subgradient of H is requested at a point where H vanishes.
struct DegenerateIterateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceRecord {
  int k = 0;
  double objective = 0.0;       // G(u^k) = R(u^k) + fidelity
  double ratio = 0.0;           // R(u^k)
  double fidelity = 0.0;        // (lambda/2) ||A u^k - f||^2
  double u_norm = 0.0;          // ||u^k||_2
  double au_minus_f_norm = 0.0; // ||A u^k||_2 - ||f||_2
  double rel_change = 0.0;      // ||u^k - u^{k-1}|| / ||u^k||, inf at k = 0
  int inner_iters = 0;
};

template <class U>
struct SolveResult {
  U u;
  std::vector<TraceRecord> trace;
  SolveStatus status = SolveStatus::MaxIterations;
};

struct SolverConfig {
  double beta = 1.0;    // 1/dt, proximal anchor weight of the outer flow
  double rho = 10.0;    // ADMM penalty
  double lambda = 0.0;  // fidelity weight; must be set by the caller
  int K = 0;            // top-K count, L1/S_K only
  double eps = 1e-8;    // relative-change tolerance (outer and inner)
  int k_max = 100;      // outer iteration cap
  int j_max = 200;      // inner ADMM iteration cap
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on out-of-range fields. lambda = 0 is
  // accepted only when allow_zero_lambda is set (diagnostic runs); the CLI
  // rejects non-positive lambda at config load.
  void validate(bool allow_zero_lambda = false) const;
};

bool all_finite(const Vec& v);
bool all_finite(const Image& m);

} // namespace qrm
