#pragma once

#include "qrm/types.hpp"

#include <memory>
#include <mutex>
#include <vector>

struct fftw_plan_s;

namespace qrm {

// Dense m x n sensing matrix. Caches the small-system Cholesky factor of
// (I + lambda*kappa * A A^T) so repeated Woodbury solves with the same
// (lambda, kappa) reuse it; factors are built eagerly via prepare_factor and
// concurrent apply/solve calls on a prepared operator are safe.
class DenseOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd a);
  // Movable (fresh mutex); not safe while other threads use the source.
  DenseOperator(DenseOperator&& other) noexcept
      : a_(std::move(other.a_)), factors_(std::move(other.factors_)) {}

  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }
  const Eigen::MatrixXd& matrix() const { return a_; }

  Vec apply(const Vec& u) const;         // A u
  Vec apply_adjoint(const Vec& r) const; // A^T r

  void prepare_factor(double lambda, double kappa) const;
  bool has_factor(double lambda, double kappa) const;

  // x = (lambda A^T A + (1/kappa) I)^{-1} b via the Woodbury identity:
  // x = kappa*b - lambda*kappa^2 * A^T (I + lambda*kappa A A^T)^{-1} A b.
  Vec woodbury_solve(double lambda, double kappa, const Vec& b) const;

 private:
  struct Factor {
    double lambda = 0.0;
    double kappa = 0.0;
    Eigen::LLT<Eigen::MatrixXd> llt;
  };
  const Factor* find_factor(double lambda, double kappa) const;

  Eigen::MatrixXd a_;
  mutable std::vector<std::unique_ptr<Factor>> factors_; // stable addresses
  mutable std::mutex factor_mu_;
};

// Orthonormal 2-D DFT (scale 1/sqrt(HW) both directions) with reusable FFTW
// plans. Plan creation/destruction is serialized globally; execution copies
// through an owned buffer under a per-object lock, so const use is
// thread-safe.
class Fft2 {
 public:
  Fft2(int height, int width);
  ~Fft2();
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  int height() const { return h_; }
  int width() const { return w_; }

  KSpace forward(const Image& u) const;
  KSpace forward(const KSpace& u) const;
  KSpace inverse(const KSpace& v) const;

 private:
  KSpace run(const KSpace& in, bool fwd) const;

  int h_;
  int w_;
  fftw_plan_s* fwd_ = nullptr;
  fftw_plan_s* bwd_ = nullptr;
  void* buf_ = nullptr;
  mutable std::mutex mu_;
};

// Partial Fourier sampling: apply = mask o F (orthonormal), adjoint =
// Re(F^{-1} zero-filled). The mask must be symmetric under frequency
// negation and contain the DC sample, so A^T A is diagonalized by F with
// symbol = mask; the constructor rejects masks violating that.
class RadialFourierOperator {
 public:
  explicit RadialFourierOperator(Mask mask);

  int height() const { return static_cast<int>(mask_.rows()); }
  int width() const { return static_cast<int>(mask_.cols()); }
  int sample_count() const { return samples_; }
  const Mask& mask() const { return mask_; }
  const Fft2& fft() const { return *fft_; }

  KSpace apply(const Image& u) const;
  Image apply_adjoint(const KSpace& r) const;

 private:
  Mask mask_;
  std::unique_ptr<Fft2> fft_;
  int samples_ = 0;
};

// Periodic forward differences and the exact adjoint (<grad u, g> = <u, grad_adjoint g>).
GradField grad(const Image& u);
Image grad_adjoint(const GradField& g);

// Radial sampling pattern: n_lines angles pi*i/n_lines through the centered
// frequency origin, one sample per integer radius rounded to the grid,
// symmetrized under negation, DC always included.
Mask radial_mask(int height, int width, int n_lines);

// Fourier symbol of (lambda A^T A + rho D^T D + beta I):
// lambda*mask(k1,k2) + rho*(4 sin^2(pi k1/H) + 4 sin^2(pi k2/W)) + beta.
Eigen::ArrayXXd spectral_denominator(const RadialFourierOperator& op,
                                     double rho, double beta, double lambda);

} // namespace qrm
