// Scalar reference kernels. Built on libm and the special-function module so
// they form an independent oracle for the SIMD variants.

#include <cmath>

#include "kernels_vtable.hpp"
#include "mgg/special.hpp"

namespace mgg::kernels::detail {

namespace {

double s_exp_sum(const double* x, double* y, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double xi = x[i];
    if (xi > 709.43) xi = 709.43;
    if (xi < -708.39) xi = -708.39;
    y[i] = std::exp(xi);
    total += y[i];
  }
  return total;
}

void s_exp(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double xi = x[i];
    if (xi > 709.43) xi = 709.43;
    if (xi < -708.39) xi = -708.39;
    y[i] = std::exp(xi);
  }
}

void s_log(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    y[i] = x[i] < 2.2250738585072014e-308 ? -HUGE_VAL : std::log(x[i]);
}

void s_sigmoid_pair(const double* z, double* s, double* om, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double a = -std::fabs(z[i]);
    if (a < -708.39) a = -708.39;
    const double e = std::exp(a);
    const double inv = 1.0 / (1.0 + e);
    if (z[i] >= 0.0) {
      s[i] = inv;
      om[i] = e * inv;
    } else {
      s[i] = e * inv;
      om[i] = inv;
    }
  }
}

void s_digamma21(const double* s, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = digamma(2.0 - s[i]);
}

void s_lgamma21(const double* s, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = log_gamma(2.0 - s[i]);
}

double s_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double s_sum_sq(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double s_dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void s_grad_weights(const double* w, const double* m, const double* s, double coef, double* g,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) g[i] = m[i] - s[i] - coef * w[i];
}

void s_grad_indices(const double* s, const double* om, const double* v, double log_c, double* g,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    g[i] = s[i] * om[i] * (digamma(2.0 - s[i]) - v[i] + log_c) + 2.0 - 4.0 * s[i];
}

double s_index_logpost_sum(const double* s, const double* om, const double* v, double log_c,
                           std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ls = om[i] < 2.2250738585072014e-308 || s[i] < 2.2250738585072014e-308
                          ? -HUGE_VAL
                          : std::log(s[i]) + std::log(om[i]);
    acc += s[i] * (log_c - v[i]) + 2.0 * ls - log_gamma(2.0 - s[i]);
  }
  return acc;
}

const Vtable kScalar = {
    s_exp_sum, s_exp,    s_log,    s_sigmoid_pair, s_digamma21,     s_lgamma21,
    s_sum,     s_sum_sq, s_dot,    s_axpy,         s_grad_weights,  s_grad_indices,
    s_index_logpost_sum};

}  // namespace

const Vtable* scalar_vtable() { return &kScalar; }

}  // namespace mgg::kernels::detail
