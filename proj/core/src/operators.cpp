#include "qrm/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>

namespace qrm {

namespace {

// FFTW planner/destroyer calls are not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex mu;
  return mu;
}

} // namespace

// ---------------------------------------------------------------- dense

DenseOperator::DenseOperator(Eigen::MatrixXd a) : a_(std::move(a)) {
  if (a_.rows() < 1 || a_.cols() < 1)
    throw std::invalid_argument("DenseOperator: matrix must be nonempty");
  if (!a_.allFinite())
    throw std::invalid_argument("DenseOperator: matrix has non-finite entries");
}

Vec DenseOperator::apply(const Vec& u) const {
  if (u.size() != a_.cols())
    throw std::invalid_argument("DenseOperator::apply: size mismatch");
  return a_ * u;
}

Vec DenseOperator::apply_adjoint(const Vec& r) const {
  if (r.size() != a_.rows())
    throw std::invalid_argument("DenseOperator::apply_adjoint: size mismatch");
  return a_.transpose() * r;
}

const DenseOperator::Factor* DenseOperator::find_factor(double lambda,
                                                        double kappa) const {
  for (const auto& f : factors_)
    if (f->lambda == lambda && f->kappa == kappa) return f.get();
  return nullptr;
}

void DenseOperator::prepare_factor(double lambda, double kappa) const {
  if (!(kappa > 0.0))
    throw std::invalid_argument("prepare_factor: kappa must be > 0");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("prepare_factor: lambda must be >= 0");
  std::lock_guard<std::mutex> lock(factor_mu_);
  if (find_factor(lambda, kappa)) return;
  auto f = std::make_unique<Factor>();
  f->lambda = lambda;
  f->kappa = kappa;
  Eigen::MatrixXd small = lambda * kappa * (a_ * a_.transpose());
  small.diagonal().array() += 1.0;
  f->llt.compute(small);
  if (f->llt.info() != Eigen::Success)
    throw std::runtime_error("prepare_factor: Cholesky factorization failed");
  factors_.push_back(std::move(f));
}

bool DenseOperator::has_factor(double lambda, double kappa) const {
  std::lock_guard<std::mutex> lock(factor_mu_);
  return find_factor(lambda, kappa) != nullptr;
}

Vec DenseOperator::woodbury_solve(double lambda, double kappa,
                                  const Vec& b) const {
  if (b.size() != a_.cols())
    throw std::invalid_argument("woodbury_solve: size mismatch");
  prepare_factor(lambda, kappa); // no-op when already cached
  const Factor* f = nullptr;
  {
    std::lock_guard<std::mutex> lock(factor_mu_);
    f = find_factor(lambda, kappa);
  }
  const Vec ab = a_ * b;
  const Vec t = f->llt.solve(ab);
  return kappa * b - (lambda * kappa * kappa) * (a_.transpose() * t);
}

// ---------------------------------------------------------------- fft

Fft2::Fft2(int height, int width) : h_(height), w_(width) {
  if (h_ < 1 || w_ < 1)
    throw std::invalid_argument("Fft2: grid must be at least 1 x 1");
  const std::size_t n = static_cast<std::size_t>(h_) * w_;
  buf_ = fftw_malloc(sizeof(fftw_complex) * n);
  if (!buf_) throw std::runtime_error("Fft2: allocation failed");
  std::lock_guard<std::mutex> lock(plan_mutex());
  // Column-major H x W data seen as a row-major (W, H) array: planning the
  // transposed shape computes the transform with row frequency over H and
  // column frequency over W, matching the (i, j) = (k1, k2) layout.
  auto* b = static_cast<fftw_complex*>(buf_);
  fwd_ = fftw_plan_dft_2d(w_, h_, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_2d(w_, h_, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw std::runtime_error("Fft2: planning failed");
}

Fft2::~Fft2() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
  if (buf_) fftw_free(buf_);
}

KSpace Fft2::run(const KSpace& in, bool fwd) const {
  if (in.rows() != h_ || in.cols() != w_)
    throw std::invalid_argument("Fft2: shape mismatch");
  const std::size_t n = static_cast<std::size_t>(h_) * w_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  KSpace out(h_, w_);
  std::lock_guard<std::mutex> lock(mu_);
  auto* b = reinterpret_cast<std::complex<double>*>(buf_);
  std::copy(in.data(), in.data() + n, b);
  fftw_execute(fwd ? fwd_ : bwd_);
  for (std::size_t i = 0; i < n; ++i) out.data()[i] = b[i] * scale;
  return out;
}

KSpace Fft2::forward(const Image& u) const {
  return run(u.cast<std::complex<double>>(), true);
}

KSpace Fft2::forward(const KSpace& u) const { return run(u, true); }

KSpace Fft2::inverse(const KSpace& v) const { return run(v, false); }

// ---------------------------------------------------------------- sampling

RadialFourierOperator::RadialFourierOperator(Mask mask) : mask_(std::move(mask)) {
  const int h = static_cast<int>(mask_.rows());
  const int w = static_cast<int>(mask_.cols());
  if (h < 2 || w < 2)
    throw std::invalid_argument("RadialFourierOperator: grid too small");
  if (!mask_(0, 0))
    throw std::invalid_argument(
        "RadialFourierOperator: DC sample (0,0) must be included");
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      if (mask_(i, j) != mask_((h - i) % h, (w - j) % w))
        throw std::invalid_argument(
            "RadialFourierOperator: mask must be symmetric under frequency "
            "negation");
  samples_ = static_cast<int>(mask_.count());
  fft_ = std::make_unique<Fft2>(h, w);
}

KSpace RadialFourierOperator::apply(const Image& u) const {
  if (u.rows() != mask_.rows() || u.cols() != mask_.cols())
    throw std::invalid_argument("RadialFourierOperator::apply: shape mismatch");
  KSpace v = fft_->forward(u);
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (!mask_(i, j)) v(i, j) = 0.0;
  return v;
}

Image RadialFourierOperator::apply_adjoint(const KSpace& r) const {
  if (r.rows() != mask_.rows() || r.cols() != mask_.cols())
    throw std::invalid_argument(
        "RadialFourierOperator::apply_adjoint: shape mismatch");
  KSpace filled = r;
  for (Eigen::Index j = 0; j < filled.cols(); ++j)
    for (Eigen::Index i = 0; i < filled.rows(); ++i)
      if (!mask_(i, j)) filled(i, j) = 0.0;
  return fft_->inverse(filled).real();
}

// ---------------------------------------------------------------- gradient

GradField grad(const Image& u) {
  const Eigen::Index h = u.rows(), w = u.cols();
  if (h < 2 || w < 2)
    throw std::invalid_argument("grad: grid must be at least 2 x 2");
  GradField g;
  g.dx.resize(h, w);
  g.dy.resize(h, w);
  for (Eigen::Index j = 0; j < w; ++j) {
    const Eigen::Index jn = (j + 1) % w;
    for (Eigen::Index i = 0; i < h; ++i) {
      const Eigen::Index in = (i + 1) % h;
      g.dx(i, j) = u(i, jn) - u(i, j);
      g.dy(i, j) = u(in, j) - u(i, j);
    }
  }
  return g;
}

Image grad_adjoint(const GradField& g) {
  const Eigen::Index h = g.dx.rows(), w = g.dx.cols();
  if (g.dy.rows() != h || g.dy.cols() != w)
    throw std::invalid_argument("grad_adjoint: component shape mismatch");
  if (h < 2 || w < 2)
    throw std::invalid_argument("grad_adjoint: grid must be at least 2 x 2");
  Image out(h, w);
  for (Eigen::Index j = 0; j < w; ++j) {
    const Eigen::Index jp = (j + w - 1) % w;
    for (Eigen::Index i = 0; i < h; ++i) {
      const Eigen::Index ip = (i + h - 1) % h;
      out(i, j) = (g.dx(i, jp) - g.dx(i, j)) + (g.dy(ip, j) - g.dy(i, j));
    }
  }
  return out;
}

Mask radial_mask(int height, int width, int n_lines) {
  if (height < 2 || width < 2)
    throw std::invalid_argument("radial_mask: grid too small");
  if (n_lines < 1)
    throw std::invalid_argument("radial_mask: need at least one line");
  Mask m = Mask::Constant(height, width, false);
  const double rmax = 0.5 * std::sqrt(static_cast<double>(height) * height +
                                      static_cast<double>(width) * width);
  auto set_centered = [&](double kx, double ky) {
    // (kx, ky) are centered frequencies; wrap onto the DFT grid.
    const long ki = std::lround(ky), kj = std::lround(kx);
    const int i = static_cast<int>(((ki % height) + height) % height);
    const int j = static_cast<int>(((kj % width) + width) % width);
    m(i, j) = true;
    m((height - i) % height, (width - j) % width) = true;
  };
  m(0, 0) = true;
  for (int l = 0; l < n_lines; ++l) {
    const double theta = M_PI * static_cast<double>(l) / n_lines;
    const double cx = std::cos(theta), cy = std::sin(theta);
    for (int r = 1; r <= static_cast<int>(rmax); ++r) {
      const double kx = r * cx, ky = r * cy;
      if (std::abs(kx) > width / 2.0 || std::abs(ky) > height / 2.0) continue;
      set_centered(kx, ky);
      set_centered(-kx, -ky);
    }
  }
  return m;
}

Eigen::ArrayXXd spectral_denominator(const RadialFourierOperator& op,
                                     double rho, double beta, double lambda) {
  if (!(rho >= 0.0) || !(beta >= 0.0) || !(lambda >= 0.0))
    throw std::invalid_argument("spectral_denominator: negative coefficient");
  const int h = op.height(), w = op.width();
  Eigen::ArrayXXd d(h, w);
  for (int j = 0; j < w; ++j) {
    const double sj = std::sin(M_PI * j / w);
    const double lj = 4.0 * sj * sj;
    for (int i = 0; i < h; ++i) {
      const double si = std::sin(M_PI * i / h);
      d(i, j) = lambda * (op.mask()(i, j) ? 1.0 : 0.0) + rho * (4.0 * si * si + lj) + beta;
    }
  }
  return d;
}

} // namespace qrm
