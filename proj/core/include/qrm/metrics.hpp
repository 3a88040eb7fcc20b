#pragma once

#include "qrm/operators.hpp"

#include <vector>

namespace qrm {

// Sum of squared errors ||u_hat - u_true||_2^2 (not divided by length).
double mse(const Vec& u_hat, const Vec& u_true);
double mse(const Image& u_hat, const Image& u_true);

// Expected error of least squares restricted to the true support:
// sigma^2 * trace((A_S^T A_S)^{-1}). Requires |S| >= 1 and A_S full column
// rank.
double oracle_mse(const DenseOperator& a, const std::vector<int>& support,
                  double sigma);

struct RePsnr {
  double re = 0.0;   // ||u_star - u_true|| / ||u_true||
  double psnr = 0.0; // 10 log10(N peak^2 / ||u_star - u_true||^2), peak = max(u_true)
};

// PSNR is capped at 200 dB so exact reconstructions stay finite in CSVs.
inline constexpr double kPsnrCap = 200.0;

RePsnr re_psnr(const Vec& u_star, const Vec& u_true);
RePsnr re_psnr(const Image& u_star, const Image& u_true);

} // namespace qrm
