#pragma once

// Internal dispatch table shared by the kernel implementations.

#include <cstddef>

namespace mgg::kernels::detail {

struct Vtable {
  double (*exp_sum)(const double*, double*, std::size_t);
  void (*v_exp)(const double*, double*, std::size_t);
  void (*v_log)(const double*, double*, std::size_t);
  void (*sigmoid_pair)(const double*, double*, double*, std::size_t);
  void (*v_digamma21)(const double*, double*, std::size_t);
  void (*v_lgamma21)(const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*grad_weights)(const double*, const double*, const double*, double, double*, std::size_t);
  void (*grad_indices)(const double*, const double*, const double*, double, double*, std::size_t);
  double (*index_logpost_sum)(const double*, const double*, const double*, double, std::size_t);
};

const Vtable* scalar_vtable();
const Vtable* avx2_vtable();  // nullptr when the build or host lacks AVX2+FMA

// Chebyshev coefficients (monomials in u = 2s - 1) for digamma(2-s) and
// log Gamma(2-s) on s in [0,1]; max error below 6e-15 / 5e-16.
inline constexpr int kPoly21Degree = 18;
inline constexpr double kDigamma21[kPoly21Degree + 1] = {
    0.036489973978576520559,    -0.46740110027241180322,    -0.10359958052931404871,
    -0.029356063204063214496,   -0.0090475255888389488287,  -0.0028941533575929853123,
    -0.00094309732998909730644, -0.00031035744949351846308, -0.00010269016732337445288,
    -3.4085300514886047326e-5,  -1.1332960313034481265e-5,  -3.7652601213994387038e-6,
    -1.2539651845740262611e-6,  -4.2810903453229818805e-7,  -1.4265870390604687901e-7,
    -3.8087423460593384293e-8,  -1.2694079371253230915e-8,  -8.9593399281831961557e-9,
    -2.9863616020935058835e-9};
inline constexpr double kLgamma21[kPoly21Degree + 1] = {
    -0.12078223763524522235,   -0.018244986989282859712, 0.11685027506808662787,
    0.017266596754558177859,   0.0036695079009453356464, 0.00090475256469825681146,
    0.00024117944195679870856, 6.7364048145228286558e-5, 1.9397363863013531048e-5,
    5.7052135821657450449e-6,  1.704197607648900251e-6,  5.146118085335712462e-7,
    1.5700052955212774003e-7,  4.9037347546384661077e-8, 1.517593234187270349e-8,
    4.0136618009235244643e-9,  1.2509741156058114712e-9, 7.4548083392893432488e-10,
    2.3534968766364789387e-10};

}  // namespace mgg::kernels::detail
