// AVX2+FMA kernel variants. exp and log follow the cephes range reduction
// and rational approximations; digamma/lgamma on (1,2) use the frozen
// Chebyshev coefficients from kernels_vtable.hpp.

#include "kernels_vtable.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace mgg::kernels::detail {

namespace {

using d4 = __m256d;

inline d4 vset(double v) { return _mm256_set1_pd(v); }

// 2^k for integer-valued k (as doubles, |k| <= 1075) via exponent bits.
inline d4 pow2i(d4 k) {
  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m256i k64 = _mm256_cvtepi32_epi64(ki);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_castsi256_pd(bits);
}

// exp(x) for x clamped to the finite range.
inline d4 vexp(d4 x) {
  x = _mm256_min_pd(x, vset(709.43));
  x = _mm256_max_pd(x, vset(-708.39));
  const d4 half = vset(0.5);
  d4 k = _mm256_round_pd(_mm256_fmadd_pd(x, vset(1.4426950408889634073599), _mm256_setzero_pd()),
                         _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  (void)half;
  d4 r = _mm256_fnmadd_pd(k, vset(6.93145751953125e-1), x);
  r = _mm256_fnmadd_pd(k, vset(1.42860682030941723212e-6), r);
  const d4 rr = _mm256_mul_pd(r, r);
  // r * P(r^2)
  d4 p = vset(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, rr, vset(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, rr, vset(9.99999999999999999910e-1));
  const d4 px = _mm256_mul_pd(r, p);
  d4 q = vset(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, rr, vset(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, rr, vset(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, rr, vset(2.00000000000000000005e0));
  const d4 e = _mm256_div_pd(px, _mm256_sub_pd(q, px));
  const d4 y = _mm256_fmadd_pd(vset(2.0), e, vset(1.0));
  return _mm256_mul_pd(y, pow2i(k));
}

// log(x) for normal positive x; below the normal range returns -inf.
inline d4 vlog(d4 x) {
  const d4 min_normal = vset(2.2250738585072014e-308);
  const d4 small_mask = _mm256_cmp_pd(x, min_normal, _CMP_LT_OQ);

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  // unbiased exponent + 1 so the mantissa lands in [0.5, 1)
  const __m256i exp_i = _mm256_sub_epi64(_mm256_and_si256(exp_bits, _mm256_set1_epi64x(0x7FF)),
                                         _mm256_set1_epi64x(1022));
  // int64 -> double for values in int32 range: go through packed int32
  const __m256i shuf = _mm256_permutevar8x32_epi32(
      exp_i, _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0));
  d4 e = _mm256_cvtepi32_pd(_mm256_castsi256_si128(shuf));

  d4 m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FE0000000000000LL)));

  // if m < sqrt(1/2): m *= 2, e -= 1
  const d4 lt = _mm256_cmp_pd(m, vset(0.70710678118654752440), _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), lt);
  e = _mm256_sub_pd(e, _mm256_and_pd(lt, vset(1.0)));
  const d4 f = _mm256_sub_pd(m, vset(1.0));

  d4 p = vset(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, f, vset(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, f, vset(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, f, vset(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, f, vset(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, f, vset(7.70838733755885391666e0));
  d4 q = _mm256_add_pd(f, vset(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, f, vset(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, f, vset(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, f, vset(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, f, vset(2.31251620126765340583e1));

  const d4 ff = _mm256_mul_pd(f, f);
  d4 y = _mm256_mul_pd(_mm256_mul_pd(f, ff), _mm256_div_pd(p, q));
  y = _mm256_fnmadd_pd(e, vset(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(vset(0.5), ff, y);
  d4 out = _mm256_add_pd(f, y);
  out = _mm256_fmadd_pd(e, vset(0.693359375), out);
  return _mm256_blendv_pd(out, vset(-HUGE_VAL), small_mask);
}

inline d4 poly21(const double* coef, d4 s) {
  const d4 u = _mm256_fmsub_pd(vset(2.0), s, vset(1.0));
  d4 acc = vset(coef[kPoly21Degree]);
  for (int k = kPoly21Degree - 1; k >= 0; --k) acc = _mm256_fmadd_pd(acc, u, vset(coef[k]));
  return acc;
}

inline double hsum(d4 v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

double a_exp_sum(const double* x, double* y, std::size_t n) {
  d4 acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const d4 e = vexp(_mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, e);
    acc = _mm256_add_pd(acc, e);
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    double xi = x[i];
    if (xi > 709.43) xi = 709.43;
    if (xi < -708.39) xi = -708.39;
    y[i] = std::exp(xi);
    total += y[i];
  }
  return total;
}

void a_exp(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, vexp(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) {
    double xi = x[i];
    if (xi > 709.43) xi = 709.43;
    if (xi < -708.39) xi = -708.39;
    y[i] = std::exp(xi);
  }
}

void a_log(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, vlog(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = x[i] < 2.2250738585072014e-308 ? -HUGE_VAL : std::log(x[i]);
}

void a_sigmoid_pair(const double* z, double* s, double* om, std::size_t n) {
  const d4 zero = _mm256_setzero_pd();
  const d4 one = vset(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const d4 zi = _mm256_loadu_pd(z + i);
    const d4 neg_abs = _mm256_min_pd(zi, _mm256_sub_pd(zero, zi));
    const d4 e = vexp(neg_abs);
    const d4 inv = _mm256_div_pd(one, _mm256_add_pd(one, e));
    const d4 einv = _mm256_mul_pd(e, inv);
    const d4 nonneg = _mm256_cmp_pd(zi, zero, _CMP_GE_OQ);
    _mm256_storeu_pd(s + i, _mm256_blendv_pd(einv, inv, nonneg));
    _mm256_storeu_pd(om + i, _mm256_blendv_pd(inv, einv, nonneg));
  }
  for (; i < n; ++i) {
    const double e = std::exp(-std::fabs(z[i]));
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

double scalar_poly21(const double* coef, double s) {
  const double u = 2.0 * s - 1.0;
  double acc = coef[kPoly21Degree];
  for (int k = kPoly21Degree - 1; k >= 0; --k) acc = std::fma(acc, u, coef[k]);
  return acc;
}

void a_digamma21(const double* s, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, poly21(kDigamma21, _mm256_loadu_pd(s + i)));
  for (; i < n; ++i) y[i] = scalar_poly21(kDigamma21, s[i]);
}

void a_lgamma21(const double* s, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, poly21(kLgamma21, _mm256_loadu_pd(s + i)));
  for (; i < n; ++i) y[i] = scalar_poly21(kLgamma21, s[i]);
}

double a_sum(const double* x, std::size_t n) {
  d4 acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double a_sum_sq(const double* x, std::size_t n) {
  d4 acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const d4 v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double a_dot(const double* a, const double* b, std::size_t n) {
  d4 acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void a_axpy(double a, const double* x, double* y, std::size_t n) {
  const d4 av = vset(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void a_grad_weights(const double* w, const double* m, const double* s, double coef, double* g,
                    std::size_t n) {
  const d4 cv = vset(coef);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const d4 ms = _mm256_sub_pd(_mm256_loadu_pd(m + i), _mm256_loadu_pd(s + i));
    _mm256_storeu_pd(g + i, _mm256_fnmadd_pd(cv, _mm256_loadu_pd(w + i), ms));
  }
  for (; i < n; ++i) g[i] = m[i] - s[i] - coef * w[i];
}

void a_grad_indices(const double* s, const double* om, const double* v, double log_c, double* g,
                    std::size_t n) {
  const d4 lc = vset(log_c);
  const d4 two = vset(2.0);
  const d4 four = vset(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const d4 si = _mm256_loadu_pd(s + i);
    const d4 omi = _mm256_loadu_pd(om + i);
    const d4 dig = poly21(kDigamma21, si);
    const d4 bracket = _mm256_add_pd(_mm256_sub_pd(dig, _mm256_loadu_pd(v + i)), lc);
    const d4 lin = _mm256_fnmadd_pd(four, si, two);
    _mm256_storeu_pd(g + i, _mm256_fmadd_pd(_mm256_mul_pd(si, omi), bracket, lin));
  }
  for (; i < n; ++i)
    g[i] = s[i] * om[i] * (scalar_poly21(kDigamma21, s[i]) - v[i] + log_c) + 2.0 - 4.0 * s[i];
}

double a_index_logpost_sum(const double* s, const double* om, const double* v, double log_c,
                           std::size_t n) {
  const d4 lc = vset(log_c);
  const d4 two = vset(2.0);
  d4 acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const d4 si = _mm256_loadu_pd(s + i);
    const d4 omi = _mm256_loadu_pd(om + i);
    const d4 logs = _mm256_add_pd(vlog(si), vlog(omi));
    const d4 lg = poly21(kLgamma21, si);
    d4 term = _mm256_mul_pd(si, _mm256_sub_pd(lc, _mm256_loadu_pd(v + i)));
    term = _mm256_fmadd_pd(two, logs, term);
    term = _mm256_sub_pd(term, lg);
    acc = _mm256_add_pd(acc, term);
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double ls = (s[i] < 2.2250738585072014e-308 || om[i] < 2.2250738585072014e-308)
                          ? -HUGE_VAL
                          : std::log(s[i]) + std::log(om[i]);
    total += s[i] * (log_c - v[i]) + 2.0 * ls - scalar_poly21(kLgamma21, s[i]);
  }
  return total;
}

const Vtable kAvx2 = {
    a_exp_sum, a_exp,    a_log, a_sigmoid_pair, a_digamma21,    a_lgamma21,
    a_sum,     a_sum_sq, a_dot, a_axpy,         a_grad_weights, a_grad_indices,
    a_index_logpost_sum};

}  // namespace

const Vtable* avx2_vtable() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}

}  // namespace mgg::kernels::detail

#else  // non-x86 build: no AVX2 variant

namespace mgg::kernels::detail {
const Vtable* avx2_vtable() { return nullptr; }
}  // namespace mgg::kernels::detail

#endif
