#include "mgg/samplers.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mgg/special.hpp"

namespace mgg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of a draw from the one-sided stable law with Laplace transform
// exp(-t^s), via Zolotarev's integral representation.
double stable_log_draw(double s, Rng& rng) {
  const double u = M_PI * rng.uniform_pos();
  const double e = rng.exponential();
  const double log_a = (s * std::log(std::sin(s * u)) + (1.0 - s) * std::log(std::sin((1.0 - s) * u)) -
                        std::log(std::sin(u))) /
                       (1.0 - s);
  return (1.0 - s) / s * (log_a - std::log(e));
}

// Draw with LT exp(-((t+tilt)^s - tilt^s)) where tilt = exp(log_tilt) and
// tilt^s <= 1, by thinning the plain stable draw with exp(-tilt x).
double tilted_small(double s, double log_tilt, Rng& rng) {
  const double tilt = std::exp(log_tilt);
  for (;;) {
    const double x = std::exp(stable_log_draw(s, rng));
    if (std::log(rng.uniform_pos()) < -tilt * x) return x;
  }
}

// General tilt, log-domain parameter so callers can express tilts whose
// linear value over- or underflows.
double tilted_stable_log(double s, double log_tilt, Rng& rng) {
  if (log_tilt == kNegInf) return std::exp(stable_log_draw(s, rng));
  const double log_ts = s * log_tilt;
  if (log_ts <= 0.0) return tilted_small(s, log_tilt, rng);
  const double ts = std::exp(log_ts);
  if (!(ts < 1e9)) throw std::runtime_error("sample_tilted_stable: tilt^s too large");
  const auto pieces = static_cast<std::uint64_t>(std::ceil(ts));
  // X = sum of `pieces` draws scaled by pieces^{-1/s}, each tilted so that
  // its tilt^s = ts/pieces <= 1.
  const double log_scale = -std::log(static_cast<double>(pieces)) / s;
  const double inner_log_tilt = log_tilt + log_scale;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < pieces; ++i) {
    const double v = tilted_small(s, inner_log_tilt, rng);
    sum += std::exp(log_scale + std::log(v));
  }
  return sum;
}

}  // namespace

double sample_tilted_stable(double s, double tilt, Rng& rng) {
  if (!(s > 0.0) || !(s < 1.0)) throw std::domain_error("sample_tilted_stable: requires s in (0,1)");
  if (!(tilt >= 0.0)) throw std::domain_error("sample_tilted_stable: requires tilt >= 0");
  return tilted_stable_log(s, tilt == 0.0 ? kNegInf : std::log(tilt), rng);
}

WeightDraw sample_size_biased(const MggParams& p, std::size_t n, Rng& rng) {
  p.validate();
  if (n == 0) throw std::domain_error("sample_size_biased: requires n >= 1");

  WeightDraw draw;
  draw.weights.reserve(n);
  draw.latent_t.reserve(n);
  draw.latent_s.reserve(n);

  const double psi_beta = psi_mst(p.beta, p.alpha, p.tau);
  const double s_lo = p.tau + 1e-12 * (p.alpha - p.tau);
  const double s_hi = p.alpha - 1e-12 * (p.alpha - p.tau);

  double xi = 0.0;
  double prev_t = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    xi += rng.exponential();
    double t = psi_mst_inv(xi / p.eta + psi_beta, p.alpha, p.tau) - p.beta;
    if (!(t > prev_t)) t = std::nextafter(prev_t, std::numeric_limits<double>::infinity());
    prev_t = t;
    const double z = t + p.beta;
    double s = s_cdf_inverse(rng.uniform_pos(), z, p.alpha, p.tau);
    if (s < s_lo) s = s_lo;
    if (s > s_hi) s = s_hi;
    const double w = p.c * rng.gamma(1.0 - s, z);
    draw.latent_t.push_back(t);
    draw.latent_s.push_back(s);
    draw.weights.push_back(std::fmax(w, DBL_MIN));
  }

  if (p.alpha == 1.0 && p.tau == 0.0 && n >= 2) {
    draw.residual_estimate = p.c * p.eta / std::log(static_cast<double>(n));
  } else {
    // conditional mean of the residual given the next arrival
    xi += rng.exponential();
    const double t_next = psi_mst_inv(xi / p.eta + psi_beta, p.alpha, p.tau) - p.beta;
    draw.residual_estimate = p.eta * p.c * kappa_mst(1, p.beta + t_next, p.alpha, p.tau);
  }
  return draw;
}

double sample_total_mass(const MggParams& p, std::size_t n_grid, Rng& rng) {
  p.validate();
  if (n_grid == 0) throw std::domain_error("sample_total_mass: requires n_grid >= 1");

  const double log_rate = std::log(p.eta / static_cast<double>(n_grid));
  const double log_beta = p.beta > 0.0 ? std::log(p.beta) : kNegInf;
  double total = 0.0;
  for (std::size_t i = 1; i <= n_grid; ++i) {
    const double s = p.tau + (p.alpha - p.tau) * static_cast<double>(i - 1) / static_cast<double>(n_grid);
    if (s < 1e-8) continue;  // the limiting contribution of this grid point is 0
    const double log_coef = log_rate / s;
    double log_tilt = log_beta == kNegInf ? kNegInf : log_coef + log_beta;
    if (log_tilt < -745.0) log_tilt = kNegInf;
    const double x = tilted_stable_log(s, log_tilt, rng);
    total += std::exp(log_coef + std::log(x));
  }
  return p.c * total;
}

std::uint64_t sample_poisson(double lambda, Rng& rng) {
  if (!(lambda > 0.0)) throw std::domain_error("sample_poisson: requires lambda > 0");
  if (lambda < 10.0) {
    // inversion by multiplication of uniforms
    const double limit = std::exp(-lambda);
    double prod = rng.uniform_pos();
    std::uint64_t k = 0;
    while (prod > limit) {
      prod *= rng.uniform_pos();
      ++k;
    }
    return k;
  }
  // PTRS transformed rejection (Hormann 1993)
  const double b = 0.931 + 2.53 * std::sqrt(lambda);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_lambda = std::log(lambda);
  for (;;) {
    double u = rng.uniform() - 0.5;
    double v = rng.uniform_pos();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    if (lhs <= kf * log_lambda - lambda - log_gamma(kf + 1.0)) return static_cast<std::uint64_t>(kf);
  }
}

std::uint64_t sample_truncated_poisson(double lambda, Rng& rng) {
  if (!(lambda > 0.0)) throw std::domain_error("sample_truncated_poisson: requires lambda > 0");
  if (lambda < 30.0) {
    // inversion on the truncated pmf; p_1 = lambda / (e^lambda - 1)
    double pk = lambda / std::expm1(lambda);
    double u = rng.uniform();
    std::uint64_t k = 1;
    while (u > pk && k < 500) {
      u -= pk;
      ++k;
      pk *= lambda / static_cast<double>(k);
    }
    return k;
  }
  for (;;) {
    const std::uint64_t k = sample_poisson(lambda, rng);
    if (k >= 1) return k;
  }
}

}  // namespace mgg
