#pragma once

#include "qrm/flow.hpp"

namespace qrm {

// Convex baseline min_u mu ||u||_1 + (lambda/2)||A u - f||^2, solved by the
// same ADMM machinery as the inner subproblems (beta = 0, h = 0). The trace
// holds the initial and final records; inner_iters is the ADMM count.
SolveResult<Vec> l1_solve(const SignalProblem& pb, double mu,
                          const SolverConfig& cfg);

// Gradient-domain counterpart min_u mu ||grad u||_1 + (lambda/2)||A u - f||^2.
SolveResult<Image> l1_solve(const ImageProblem& pb, double mu,
                            const SolverConfig& cfg);

// Difference-of-convex splitting of mu-scaled G:
//   D1(u) = mu ||u||_1 + (lambda/2)||A u - f||^2,  D2(u) = mu ||u||_1 - R(u),
// iterating u^{k+1} = argmin D1(u) - <v^k, u> with
//   v^k = mu s^k - (s^k - R(u^k) q^k) / H(u^k),  s^k = sign(u^k).
// Requires mu > 0 large enough for D2 convexity (caller's responsibility;
// mu = 1 is the shipped default). Trace records G(u^k) per outer iteration.
SolveResult<Vec> dca_solve(const SignalProblem& pb, const Regularizer& reg,
                           double mu, const SolverConfig& cfg, const Vec& u0);

// u0 = the L1 baseline solution at the same lambda, mu_init = 1.
SolveResult<Vec> dca_solve(const SignalProblem& pb, const Regularizer& reg,
                           double mu, const SolverConfig& cfg);

} // namespace qrm
