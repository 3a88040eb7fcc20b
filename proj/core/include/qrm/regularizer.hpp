#pragma once

#include "qrm/types.hpp"

namespace qrm {

enum class RegKind {
  L1OverL2,    // ||u||_1 / ||u||_2 on vectors
  L1OverSK,    // ||u||_1 / ||u||_(K), K-largest-magnitude sum, on vectors
  GradL1OverL2 // ||Du||_1 / ||Du||_2 on images, D = periodic forward differences
};

struct RegEval {
  double j = 0.0;     // J(u), numerator
  double h = 0.0;     // H(u), denominator
  double ratio = 0.0; // R(u) = J/H, with R := 0 when H = 0
};

// Quotient regularizer R = J/H with J, H convex and absolutely one-homogeneous.
// Vector overloads serve L1OverL2/L1OverSK, image overloads GradL1OverL2;
// calling the wrong domain throws std::invalid_argument.
class Regularizer {
 public:
  static Regularizer l1_over_l2() { return Regularizer(RegKind::L1OverL2, 0); }
  static Regularizer l1_over_sk(int K);
  static Regularizer grad_l1_over_l2() {
    return Regularizer(RegKind::GradL1OverL2, 0);
  }

  RegKind kind() const { return kind_; }
  int top_k() const { return k_; }
  // Stable label used in CSV output and config files.
  std::string name() const;

  RegEval eval(const Vec& u) const;
  RegEval eval(const Image& u) const;

  // q in the subdifferential of H at u, <q,u> = H(u).
  // Throws DegenerateIterateError when H(u) = 0.
  Vec subgradient_h(const Vec& u) const;
  Image subgradient_h(const Image& u) const;

  // p in the subdifferential of J at u, <p,u> = J(u).
  Vec subgradient_j(const Vec& u) const;
  Image subgradient_j(const Image& u) const;

  // h^k = (R(u)/H(u)) q with q = subgradient_h(u).
  Vec linear_term(const Vec& u) const;
  Image linear_term(const Image& u) const;

  // Uniform bound M with sup_{u != 0} R(u) <= M on the given ambient space.
  double ratio_bound(int n) const;
  double ratio_bound(int height, int width) const;

 private:
  Regularizer(RegKind kind, int k) : kind_(kind), k_(k) {}
  void require_vector_kind() const;
  void require_image_kind() const;

  RegKind kind_;
  int k_;
};

// Indices of the K largest |u_i|; ties broken by ascending index
// (stable sort on descending magnitude).
std::vector<int> k_largest_indices(const Vec& u, int k);

} // namespace qrm
