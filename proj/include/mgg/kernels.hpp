#pragma once

// Data-parallel kernels for the MCMC inner loops: elementwise exp/log,
// logistic pairs, digamma/log-gamma on the (1,2) window, reductions, and the
// fused gradient/log-posterior updates.
//
// Two implementations sit behind this interface: a scalar reference built on
// libm and the special-function module, and an AVX2+FMA variant selected at
// runtime when the host supports it. The two are equivalence-tested against
// each other; either may be forced with set_isa().

#include <cstddef>

namespace mgg::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
// Returns false (and leaves the selection unchanged) if the requested ISA is
// not available on this host/build.
bool set_isa(Isa isa);
const char* isa_name(Isa isa);

// y_i = exp(x_i); returns sum of y. Inputs are clamped to the finite range
// of exp, so the result is always finite for finite inputs.
double exp_sum(const double* x, double* y, std::size_t n);

void v_exp(const double* x, double* y, std::size_t n);

// Requires x_i > 0 and normal; x below the normal range yields -inf.
void v_log(const double* x, double* y, std::size_t n);

// s_i = sigmoid(z_i) and one_minus_i = sigmoid(-z_i), both computed from
// exp(-|z|) so neither side loses precision near saturation.
void sigmoid_pair(const double* z, double* s, double* one_minus, std::size_t n);

// digamma(2 - s) and log Gamma(2 - s) for s in [0, 1].
void v_digamma21(const double* s, double* y, std::size_t n);
void v_lgamma21(const double* s, double* y, std::size_t n);

double sum(const double* x, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);  // y += a x

// g_i = m_i - s_i - coef * w_i  (gradient of the log posterior in log-weights)
void grad_weights(const double* w, const double* m, const double* s, double coef, double* g,
                  std::size_t n);

// g_i = s_i (1-s_i) (digamma(2-s_i) - v_i + log_c) + 2 - 4 s_i
// (gradient in logit-indices), with one_minus_i = 1 - s_i supplied exactly.
void grad_indices(const double* s, const double* one_minus, const double* v, double log_c,
                  double* g, std::size_t n);

// sum_i [ -s_i v_i + 2 log s_i + 2 log(1-s_i) - log Gamma(2-s_i) + s_i log_c ]
// (the index-dependent part of the log posterior).
double index_logpost_sum(const double* s, const double* one_minus, const double* v, double log_c,
                         std::size_t n);

}  // namespace mgg::kernels
