#include "mgg/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mgg {

namespace {

constexpr double kInvE = 0.36787944117144232160;  // 1/e
constexpr double kResidualTol = 1e-14;            // convergence target on y*e^y - x
constexpr double kBranchPad = 1e-12;              // tolerance pad at the branch point

double residual(double w, double x) { return w * std::exp(w) - x; }

// One Halley step for f(w) = w e^w - x.
double halley_step(double w, double x) {
  const double ew = std::exp(w);
  const double f = w * ew - x;
  const double fp = ew * (w + 1.0);
  const double denom = fp - f * (w + 2.0) / (2.0 * (w + 1.0));
  return w - f / denom;
}

// Monotone bisection fallback; [lo, hi] must bracket the root of w e^w = x.
double bisect(double lo, double hi, double x) {
  double flo = residual(lo, x);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual(mid, x);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-17 * (1.0 + std::fabs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

double initial_guess_principal(double x) {
  if (x < -0.3235) {
    // series around the branch point, p = sqrt(2(1+e x))
    const double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  }
  if (x < 1.0) return x * (1.0 + x * (-1.0 + x * (1.5 - 8.0 / 3.0 * x)));
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

double initial_guess_minus1(double x) {
  if (x < -0.27) {
    const double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    return -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  }
  // x in (-0.27, 0): w ~ log(-x) - log(-log(-x))
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

double solve_branch(double x, double guess, bool principal) {
  double w = guess;
  // keep iterates on the right side of -1 so Halley stays on the branch
  const double wall = principal ? -1.0 : -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 60; ++i) {
    double next = halley_step(w, x);
    if (!std::isfinite(next) || (principal && next < wall) || (!principal && next > -1.0)) break;
    const double f = residual(next, x);
    if (std::fabs(f) <= kResidualTol * std::fmax(1.0, std::fabs(x)) &&
        std::fabs(next - w) <= 1e-15 * (1.0 + std::fabs(next))) {
      return next;
    }
    if (std::fabs(next - w) <= 1e-17 * (1.0 + std::fabs(next))) return next;
    w = next;
  }
  if (std::fabs(residual(w, x)) <= 1e-12 * std::fmax(1.0, std::fabs(x))) return w;
  // Halley stalled (argument essentially at the branch point): bisect.
  if (principal) {
    double hi = std::fmax(1.0, std::fabs(w) + 1.0);
    while (residual(hi, x) < 0.0) hi *= 2.0;
    return bisect(-1.0, hi, x);
  }
  double lo = std::fmin(w - 1.0, -2.0);
  while (residual(lo, x) < 0.0) lo *= 2.0;  // w e^w -> 0- as w -> -inf, so f(lo) = -x - eps... grows
  return bisect(lo, -1.0, x);
}

}  // namespace

double lambert_w(double x, WBranch branch) {
  if (std::isnan(x)) throw std::domain_error("lambert_w: NaN argument");
  if (branch == WBranch::Principal) {
    if (x < -kInvE - kBranchPad) throw std::domain_error("lambert_w: x below -1/e on principal branch");
    if (x == 0.0) return 0.0;
    if (x <= -kInvE) return -1.0;  // within the tolerance pad
    return solve_branch(x, initial_guess_principal(x), true);
  }
  if (x >= 0.0) throw std::domain_error("lambert_w: W_{-1} requires x in [-1/e, 0)");
  if (x < -kInvE - kBranchPad) throw std::domain_error("lambert_w: x below -1/e on W_{-1} branch");
  if (x <= -kInvE) return -1.0;
  return solve_branch(x, initial_guess_minus1(x), false);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic series with Bernoulli terms through x^-16
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double series = r2 * (1.0 / 12.0 +
                        r2 * (-1.0 / 120.0 +
                        r2 * (1.0 / 252.0 +
                        r2 * (-1.0 / 240.0 +
                        r2 * (1.0 / 132.0 +
                        r2 * (-691.0 / 32760.0 +
                        r2 * (1.0 / 12.0 +
                        r2 * (-3617.0 / 8160.0))))))));
  return acc + std::log(x) - 0.5 * r - series;
}

}  // namespace mgg
