#pragma once

// Random-variate generation for the mGG CRM: exponentially tilted stable
// draws, the size-biased weight construction, the grid approximation of the
// total mass, and the zero-truncated Poisson.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mgg/laplace.hpp"
#include "mgg/rng.hpp"

namespace mgg {

// Size-biased weight sequence with its latent variables.
struct WeightDraw {
  std::vector<double> weights;   // W_j (all > 0)
  std::vector<double> latent_t;  // T_j, strictly increasing
  std::vector<double> latent_s;  // S_j in (tau, alpha)
  double residual_estimate = 0.0;  // estimated mass beyond the truncation
};

// Positive variate with Laplace transform exp(-((t + tilt)^s - tilt^s)).
// Exact: Zolotarev draw plus rejection when tilt^s <= 1, and a scale split
// into ceil(tilt^s) pieces otherwise, so the expected cost stays bounded.
double sample_tilted_stable(double s, double tilt, Rng& rng);

// Size-biased construction: T_j from the inverse Laplace exponent at
// cumulative unit exponentials, S_j | T_j by inverse CDF, W_j = c W'_j with
// W'_j ~ Gamma(1 - S_j, T_j + beta).
WeightDraw sample_size_biased(const MggParams& params, std::size_t n, Rng& rng);

// Riemann-grid approximation of the law of the total mass G(Theta):
// S_n = c sum_i (eta/n)^{1/s_i} X_i over tilted stable X_i.
double sample_total_mass(const MggParams& params, std::size_t n_grid, Rng& rng);

// Poisson(lambda) conditioned to be >= 1. Inversion for small lambda,
// rejection from a plain Poisson otherwise.
std::uint64_t sample_truncated_poisson(double lambda, Rng& rng);

// Plain Poisson variate (inversion below lambda = 10, PTRS above).
std::uint64_t sample_poisson(double lambda, Rng& rng);

}  // namespace mgg
