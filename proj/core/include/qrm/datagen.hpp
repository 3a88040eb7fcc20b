#pragma once

#include "qrm/operators.hpp"

#include <cstdint>
#include <vector>

namespace qrm {

// m x n matrix with i.i.d. N(0,1) entries drawn column-major from the seeded
// counter stream, then each column shifted to zero mean and scaled to unit
// l2 norm. Requires m >= 2 (centering zeroes out single-row columns).
DenseOperator gen_gaussian_matrix(int m, int n, std::uint64_t seed);

// s-sparse vector: support via a partial Fisher-Yates pass over 0..n-1, then
// signed two-scale amplitudes assigned to the support sorted ascending
// (50% strong spikes, magnitude U[10,20]; 50% weak tail, U[0.05,0.15]).
Vec gen_sparse_signal(int n, int s, std::uint64_t seed);

// clean + sigma * N(0,1) per entry. sigma = 0 returns clean unchanged
// without consuming randomness.
Vec add_noise(const Vec& clean, double sigma, std::uint64_t seed);

// Complex measurement noise on the sampled frequencies only: independent
// sigma * N(0,1) on real and imaginary parts of each masked entry, row-major
// order over the grid. Off-mask entries stay exactly zero.
KSpace add_noise(const KSpace& clean, const Mask& mask, double sigma,
                 std::uint64_t seed);

// Modified Shepp-Logan head phantom on an H x W grid (values in [0, 1]),
// standard 10-ellipse table, grid x in [-1,1] left to right and y in [-1,1]
// bottom to top. H, W >= 32.
Image shepp_logan(int height, int width);

// Indices of nonzero entries (|u_i| > tol), ascending.
std::vector<int> support(const Vec& u, double tol = 0.0);

} // namespace qrm
