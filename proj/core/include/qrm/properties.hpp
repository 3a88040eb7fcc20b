#pragma once

#include "qrm/operators.hpp"
#include "qrm/regularizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qrm {

// Randomized verification of the structural identities the solvers rely on.
// Shared by the test suite and the verify-theory command so both report the
// same counts.

struct PropertyCheck {
  std::string name;
  int cases = 0;
  int violations = 0;
  double worst = 0.0; // largest relative error seen
};

// <q,u> = H(u) and <p,u> = J(u) for random u, rel. err. <= 1e-12; plus
// H(v) >= <q(u), v> within 1e-12 * ||v|| on independent v.
PropertyCheck check_subgradient_identities(const Regularizer& reg, int n_or_h,
                                           int w, int cases,
                                           std::uint64_t seed);

// J, H, R one-homogeneity: J(a u) = |a| J(u) etc., R(a u) = R(u), a != 0.
PropertyCheck check_homogeneity(const Regularizer& reg, int n_or_h, int w,
                                int cases, std::uint64_t seed);

// <A u, r> = <u, A^T r> for random pairs, rel. err. <= 1e-10.
PropertyCheck check_adjoint(const DenseOperator& a, int cases,
                            std::uint64_t seed);
PropertyCheck check_adjoint(const RadialFourierOperator& a, int cases,
                            std::uint64_t seed);
PropertyCheck check_grad_adjoint(int height, int width, int cases,
                                 std::uint64_t seed);

} // namespace qrm
