#include "mgg/laplace.hpp"

#include <cmath>
#include <limits>

#include "mgg/quadrature.hpp"
#include "mgg/special.hpp"

namespace mgg {

namespace {

constexpr double kSeriesWindow = 1e-4;  // |t-1| (or |log z|) below which series kick in

void check_alpha_tau(double alpha, double tau) {
  if (!(alpha > 0.0) || alpha > 1.0 || tau < 0.0 || !(tau < alpha))
    throw std::domain_error("mgg: requires 0 <= tau < alpha <= 1");
}

// x^s as exp(s log x); z spans many orders of magnitude in the samplers.
double pow_log(double x, double s) { return std::exp(s * std::log(x)); }

// integral of s z^s over [a,b], stable for z near 1.
double int_s_zs(double a, double b, double z) {
  const double L = std::log(z);
  if (std::fabs(L) < kSeriesWindow) {
    // sum_k L^k/k! (b^{k+2} - a^{k+2})/(k+2)
    double sum = 0.0, lk = 1.0, fact = 1.0;
    double ap = a * a, bp = b * b;
    for (int k = 0; k <= 5; ++k) {
      sum += lk / fact * (bp - ap) / (k + 2);
      ap *= a;
      bp *= b;
      lk *= L;
      fact *= (k + 1);
    }
    return sum;
  }
  const double za = pow_log(z, a);
  const double zb = pow_log(z, b);
  return (za - zb + (b * zb - a * za) * L) / (L * L);
}

}  // namespace

void MggParams::validate() const {
  check_alpha_tau(alpha, tau);
  if (!(beta >= 0.0)) throw std::domain_error("MggParams: beta must be >= 0");
  if (!(c > 0.0)) throw std::domain_error("MggParams: c must be > 0");
  if (!(eta > 0.0)) throw std::domain_error("MggParams: eta must be > 0");
}

void MggParams::validate_for_graph() const {
  validate();
  if (!(beta > 0.0)) throw std::domain_error("MggParams: graph model requires beta > 0");
}

double psi_mst(double t, double alpha, double tau) {
  check_alpha_tau(alpha, tau);
  if (!(t >= 0.0)) throw std::domain_error("psi_mst: requires t >= 0");
  if (t == 0.0) return 0.0;
  const double u = t - 1.0;
  if (std::fabs(u) < kSeriesWindow) {
    // (e^{aL} - e^{tL})/((a-t) L) = sum_k h_k L^{k-1}/k!  with
    // h_k = (alpha^k - tau^k)/(alpha - tau); h_1 = 1 gives psi(1) = 1.
    const double L = std::log1p(u);
    const double h2 = alpha + tau;
    const double h3 = alpha * alpha + alpha * tau + tau * tau;
    const double h4 = alpha * h3 + tau * tau * tau;
    const double h5 = alpha * h4 + tau * tau * tau * tau;
    return 1.0 + L * (h2 / 2.0 + L * (h3 / 6.0 + L * (h4 / 24.0 + L * h5 / 120.0)));
  }
  const double L = std::log(t);
  return (pow_log(t, alpha) - pow_log(t, tau)) / ((alpha - tau) * L);
}

double psi_mgg(double t, const MggParams& p) {
  p.validate();
  if (!(t >= 0.0)) throw std::domain_error("psi_mgg: requires t >= 0");
  if (t == 0.0) return 0.0;
  return p.eta * (psi_mst(p.beta + p.c * t, p.alpha, p.tau) - psi_mst(p.beta, p.alpha, p.tau));
}

namespace {

// Newton refinement of psi_mst(t) = y; well conditioned since
// psi' = kappa(1, t) > 0 and smooth.
double polish_inverse(double t, double y, double alpha, double tau, int steps) {
  for (int i = 0; i < steps; ++i) {
    if (!(t > 0.0)) break;
    const double f = psi_mst(t, alpha, tau) - y;
    const double d = kappa_mst(1, t, alpha, tau);
    const double next = t - f / d;
    if (!(next > 0.0)) {
      t *= 0.5;
      continue;
    }
    if (std::fabs(next - t) <= 1e-15 * (1.0 + next)) return next;
    t = next;
  }
  return t;
}

}  // namespace

double psi_mst_inv(double y, double alpha, double tau) {
  check_alpha_tau(alpha, tau);
  if (!(y >= 0.0)) throw std::domain_error("psi_mst_inv: requires y >= 0");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;

  if (tau == 0.0) {
    // closed form via Lambert W: t^alpha = -y W_k(-e^{-1/y}/y)
    const double q = 1.0 / y + std::log(y);  // -log of the W argument
    double arg = -std::exp(-q);
    constexpr double kInvE = 0.36787944117144232160;
    if (arg < -kInvE) arg = -kInvE;
    const double w = lambert_w(arg, y > 1.0 ? WBranch::Minus1 : WBranch::Principal);
    double t = std::exp(std::log(-y * w) / alpha);
    return polish_inverse(t, y, alpha, tau, 3);
  }

  // General tau: bracket then bisect, Newton polish at the end.
  double hi = std::fmax(2.0, y);
  while (psi_mst(hi, alpha, tau) < y) hi *= 4.0;
  double lo = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (psi_mst(mid, alpha, tau) < y ? lo : hi) = mid;
  }
  return polish_inverse(0.5 * (lo + hi), y, alpha, tau, 3);
}

double kappa_mst(int m, double z, double alpha, double tau) {
  check_alpha_tau(alpha, tau);
  if (m < 1) throw std::domain_error("kappa_mst: requires m >= 1");
  if (z == 0.0) throw std::domain_error("kappa_mst: moment is infinite at z = 0");
  if (!(z > 0.0)) throw std::domain_error("kappa_mst: requires z >= 0");

  const double span = alpha - tau;
  const double L = std::log(z);

  if (m == 1) {
    if (std::fabs(L) < kSeriesWindow) {
      // kappa(1,z) = sum_k a_k L^k / k!, a_k = [ (s-1)^{k+2}/(k+2) + (s-1)^{k+1}/(k+1) ]
      // evaluated between tau and alpha, over (alpha - tau).
      double sum = 0.0, lk = 1.0, fact = 1.0;
      double ua = alpha - 1.0, ut = tau - 1.0;
      double pa1 = ua, pt1 = ut;  // (s-1)^{k+1}
      for (int k = 0; k <= 4; ++k) {
        const double a_k = ((pa1 * ua) / (k + 2) + pa1 / (k + 1) - (pt1 * ut) / (k + 2) - pt1 / (k + 1)) / span;
        sum += a_k * lk / fact;
        pa1 *= ua;
        pt1 *= ut;
        lk *= L;
        fact *= (k + 1);
      }
      return sum;
    }
    const double za = pow_log(z, alpha);
    const double zt = pow_log(z, tau);
    return (zt - za + (alpha * za - tau * zt) * L) / (z * span * L * L);
  }

  if (m == 2) {
    if (std::fabs(L) < kSeriesWindow) {
      // kappa(2,z) = sum_k b_k L^k/k!, b_k from s(1-s)(s-2)^k integrated via u = s-2.
      double sum = 0.0, lk = 1.0, fact = 1.0;
      const double ua = alpha - 2.0, ut = tau - 2.0;
      double pa1 = ua, pt1 = ut;  // u^{k+1}
      for (int k = 0; k <= 4; ++k) {
        const double ia = pa1 * ua * ua / (k + 3) + 3.0 * pa1 * ua / (k + 2) + 2.0 * pa1 / (k + 1);
        const double it = pt1 * ut * ut / (k + 3) + 3.0 * pt1 * ut / (k + 2) + 2.0 * pt1 / (k + 1);
        sum += -(ia - it) / span * lk / fact;
        pa1 *= ua;
        pt1 *= ut;
        lk *= L;
        fact *= (k + 1);
      }
      return sum;
    }
    const double za = pow_log(z, alpha);
    const double zt = pow_log(z, tau);
    const double kappa1 = (zt - za + (alpha * za - tau * zt) * L) / (z * span * L * L);
    const double i2 = (za * (alpha * alpha * L * L - 2.0 * alpha * L + 2.0) -
                       zt * (tau * tau * L * L - 2.0 * tau * L + 2.0)) /
                      (L * L * L);
    return kappa1 / z - i2 / (z * z * span);
  }

  // m >= 3: Gamma(m-s)/Gamma(1-s) telescopes to prod_{i=1}^{m-1} (i - s).
  auto integrand = [&](double s) {
    double prod = 1.0;
    for (int i = 1; i < m; ++i) prod *= (i - s);
    return s * prod * std::exp((s - m) * L);
  };
  return integrate(integrand, tau, alpha, 1e-9) / span;
}

double kappa_mgg(int m, double z, const MggParams& p) {
  p.validate();
  if (!(z >= 0.0)) throw std::domain_error("kappa_mgg: requires z >= 0");
  const double zc = p.beta + p.c * z;
  if (zc == 0.0) throw std::domain_error("kappa_mgg: moment is infinite at beta + c z = 0");
  return p.eta * std::pow(p.c, m) * kappa_mst(m, zc, p.alpha, p.tau);
}

double levy_density(double w, const MggParams& p) {
  p.validate();
  if (!(w > 0.0)) throw std::domain_error("levy_density: requires w > 0");
  const double log_cw = std::log(p.c / w);
  auto integrand = [&](double s) {
    if (s >= 1.0) return 0.0;  // s/Gamma(1-s) -> 0 at s = 1
    return s * std::exp(s * log_cw - log_gamma(1.0 - s));
  };
  const double mix = integrate(integrand, p.tau, p.alpha, 1e-9);
  return p.eta / (p.alpha - p.tau) * std::exp(-p.beta * w / p.c) * mix / w;
}

double s_cdf_inverse(double y, double z, double alpha, double tau) {
  check_alpha_tau(alpha, tau);
  if (!(y >= 0.0) || !(y <= 1.0)) throw std::domain_error("s_cdf_inverse: requires y in [0,1]");
  if (!(z > 0.0)) throw std::domain_error("s_cdf_inverse: requires z > 0");
  if (y == 0.0) return tau;
  if (y == 1.0) return alpha;

  const double L = std::log(z);
  if (std::fabs(L) < kSeriesWindow) {
    // z = 1 closed form, then Newton against the series CDF to absorb the
    // O(L) correction.
    double x = std::sqrt((alpha * alpha - tau * tau) * y + tau * tau);
    const double total = int_s_zs(tau, alpha, z);
    for (int i = 0; i < 3; ++i) {
      const double f = int_s_zs(tau, x, z) / total - y;
      const double d = x * std::exp(x * L) / total;
      x -= f / d;
      if (x < tau) x = tau;
      if (x > alpha) x = alpha;
    }
    return x;
  }

  const double zt = pow_log(z, tau);
  const double za = pow_log(z, alpha);
  const double denom = zt - za + (alpha * za - tau * zt) * L;
  const double cy = denom * y - zt + tau * zt * L;
  double arg = cy * (1.0 / M_E);
  constexpr double kInvE = 0.36787944117144232160;
  if (arg < -kInvE) arg = -kInvE;  // roundoff at the CDF endpoints
  double x;
  if (L > 0.0) {
    x = (lambert_w(arg, WBranch::Principal) + 1.0) / L;
  } else {
    if (arg >= 0.0) arg = -std::numeric_limits<double>::min();
    x = (lambert_w(arg, WBranch::Minus1) + 1.0) / L;
  }
  if (x < tau) x = tau;
  if (x > alpha) x = alpha;
  return x;
}

double psi_mgg_over_t(double t, const MggParams& p) {
  p.validate_for_graph();
  if (!(t >= 0.0)) throw std::domain_error("psi_mgg_over_t: requires t >= 0");
  if (t < 1e-6 * std::fmax(p.beta / p.c, 1.0)) {
    // psi(t)/t = kappa(1,0) - t kappa(2,0)/2 + t^2 kappa(3,0)/6 - ...
    const double k1 = kappa_mgg(1, 0.0, p);
    const double k2 = kappa_mgg(2, 0.0, p);
    const double k3 = kappa_mgg(3, 0.0, p);
    return k1 - t * k2 / 2.0 + t * t * k3 / 6.0;
  }
  return psi_mgg(t, p) / t;
}

SparsityConstants sparsity_constants(const MggParams& p) {
  p.validate();
  if (p.alpha != 1.0 || p.tau != 0.0)
    throw std::domain_error("sparsity_constants: requires alpha = 1, tau = 0");
  if (!(p.beta > 0.0)) throw std::domain_error("sparsity_constants: requires beta > 0");

  SparsityConstants out;
  const double ec = p.eta * p.c;
  const double L = std::log(p.beta);
  if (std::fabs(L) < kSeriesWindow) {
    // (1/beta - 1 + log beta)/log^2 beta = 1/2 - L/6 + L^2/24 - L^3/120 + ...
    out.node_growth = 2.0 * ec * ec * (0.5 + L * (-1.0 / 6.0 + L * (1.0 / 24.0 + L * (-1.0 / 120.0 + L / 720.0))));
  } else {
    out.node_growth = 2.0 * ec * ec * (1.0 / p.beta - 1.0 + L) / (L * L);
  }

  // edge_growth = int_0^infty psi(2w) rho(w) dw, split at w = 1.
  //
  // On (0,1] substitute w = e^{-u}, u = (1-r)/r: the integrand written as
  // 2 * [psi(2w)/(2w)] * [w^2 rho(w)] / r^2 stays bounded as r -> 0 even
  // though rho alone overflows.
  auto w2rho = [&](double w) {
    const double log_cw = std::log(p.c / w);
    auto inner = [&](double s) {
      if (s >= 1.0) return 0.0;
      return s * std::exp(s * log_cw + (1.0 - s) * std::log(w) - log_gamma(1.0 - s));
    };
    return p.eta / (p.alpha - p.tau) * std::exp(-p.beta * w / p.c) * integrate(inner, p.tau, p.alpha, 1e-9);
  };
  auto small_piece = [&](double r) {
    const double u = (1.0 - r) / r;
    const double w = std::exp(-u);
    if (w == 0.0) {
      // deep tail: psi(2w)/(2w) -> kappa(1,0) and w^2 rho(w) ~ eta c / u^2
      return 2.0 * kappa_mgg(1, 0.0, p) * p.eta * p.c / ((1.0 - r) * (1.0 - r));
    }
    return 2.0 * psi_mgg_over_t(2.0 * w, p) * w2rho(w) / (r * r);
  };
  const double i_small = integrate(small_piece, 0.0, 1.0, 1e-7);

  const double w_max = 1.0 + p.c / p.beta * 720.0;
  auto large_piece = [&](double w) { return psi_mgg(2.0 * w, p) * levy_density(w, p); };
  const double i_large = integrate(large_piece, 1.0, w_max, 1e-7);

  out.edge_growth = i_small + i_large;
  return out;
}

}  // namespace mgg
