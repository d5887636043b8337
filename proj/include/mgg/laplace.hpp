#pragma once

// Closed-form calculus of the mixed generalized gamma (mGG) completely
// random measure: Laplace exponents and their inverses, tilted moment
// functions, the Levy density, the conditional-index CDF inverse used by
// the size-biased sampler, and the graph sparsity constants.

#include <stdexcept>

namespace mgg {

// Five-parameter mGG configuration.
//   alpha: index of variation, (0,1]
//   tau:   power-law exponent, [0, alpha)
//   beta:  exponential tilting (dimensionless), >= 0
//   c:     scale, > 0
//   eta:   rate, > 0
struct MggParams {
  double alpha = 1.0;
  double tau = 0.0;
  double beta = 1.0;
  double c = 1.0;
  double eta = 1.0;

  void validate() const;
  // Graph inference additionally needs a finite mean, i.e. beta > 0.
  void validate_for_graph() const;
};

// Asymptotic growth constants of the induced graph (alpha=1, tau=0 regime):
// nodes grow like t^2 * node_growth / log(t), edges like t^2/2 * edge_growth.
struct SparsityConstants {
  double node_growth = 0.0;
  double edge_growth = 0.0;
};

// Laplace exponent of the canonical mixed stable model,
// (t^alpha - t^tau) / ((alpha - tau) log t), continuously extended at 0 and 1.
double psi_mst(double t, double alpha, double tau);

// Full-model Laplace exponent eta * (psi_mst(beta + c t) - psi_mst(beta)).
double psi_mgg(double t, const MggParams& params);

// Inverse of psi_mst in t. Closed form through Lambert W when tau = 0,
// monotone root solve otherwise; round-trips to 1e-10 relative.
double psi_mst_inv(double y, double alpha, double tau);

// Tilted moment kappa(m, z) = integral of w^m e^{-zw} rho_mSt(w) dw.
// Closed forms for m in {1,2}; adaptive quadrature above. Throws on z = 0,
// where the moment is infinite.
double kappa_mst(int m, double z, double alpha, double tau);

// Full-model moment eta c^m kappa_mst(m, beta + c z).
double kappa_mgg(int m, double z, const MggParams& params);

// Levy density of the mGG CRM at w > 0 (adaptive quadrature over the
// mixing index).
double levy_density(double w, const MggParams& params);

// Inverse CDF of the local index density p(s) proportional to s z^s on
// (tau, alpha). Exact endpoints at y = 0 and y = 1.
double s_cdf_inverse(double y, double z, double alpha, double tau);

// Node- and edge-growth constants of the induced sparse graph; requires
// alpha = 1, tau = 0, beta > 0.
SparsityConstants sparsity_constants(const MggParams& params);

// psi_mgg(t)/t, evaluated stably down to t = 0 where it tends to the mean
// kappa_mgg(1, 0). Requires beta > 0. Exposed for the sparsity integral and
// for tests.
double psi_mgg_over_t(double t, const MggParams& params);

}  // namespace mgg
