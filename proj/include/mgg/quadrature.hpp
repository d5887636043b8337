#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature on a finite interval.
// Callers handle improper integrals with their own change of variables.

#include <cmath>
#include <cstddef>
#include <utility>

namespace mgg {

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights; embedded 7-point
// Gauss weights on the odd-indexed nodes.
inline constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodX[i];
    const double f1 = f(mid - dx);
    const double f2 = (i == 7) ? 0.0 : f(mid + dx);
    const double fsum = (i == 7) ? f1 : f1 + f2;
    kron += kKronrodW[i] * fsum;
    if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {kron, std::fabs(kron - gauss)};
}

template <class F>
double adapt(F&& f, double a, double b, double tol, double whole, int depth) {
  auto [left, err_l] = gk15(f, a, 0.5 * (a + b));
  auto [right, err_r] = gk15(f, 0.5 * (a + b), b);
  const double sum = left + right;
  if (depth <= 0 || err_l + err_r <= tol || std::fabs(sum - whole) <= tol) return sum;
  return adapt(f, a, 0.5 * (a + b), 0.5 * tol, left, depth - 1) +
         adapt(f, 0.5 * (a + b), b, 0.5 * tol, right, depth - 1);
}

}  // namespace detail

// Integrates f over [a,b] to the requested relative tolerance (with a small
// absolute floor so integrals that vanish do not recurse forever).
template <class F>
double integrate(F&& f, double a, double b, double rel_tol, double abs_floor = 1e-300) {
  if (a == b) return 0.0;
  auto [whole, err] = detail::gk15(f, a, b);
  const double tol = std::fmax(rel_tol * std::fabs(whole), abs_floor);
  if (err <= tol) return whole;
  return detail::adapt(f, a, b, tol, whole, 48);
}

}  // namespace mgg
