#pragma once

// Real-valued special functions: both real branches of the Lambert W
// function, log-gamma and digamma. Everything here is pure and thread-safe.

namespace mgg {

enum class WBranch {
  Principal,  // W0, defined on [-1/e, inf)
  Minus1      // W-1, defined on [-1/e, 0)
};

// Solves y * exp(y) = x on the requested branch. Halley iteration from an
// analytic initial guess, bisection fallback near the branch point -1/e.
// Throws std::domain_error outside the branch domain.
double lambert_w(double x, WBranch branch);

// log(Gamma(x)) for x > 0.
double log_gamma(double x);

// d/dx log(Gamma(x)) for x > 0. Asymptotic series for x >= 6, upward
// recurrence below.
double digamma(double x);

}  // namespace mgg
