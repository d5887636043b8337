#include "mgg/kernels.hpp"

#include "kernels_vtable.hpp"

namespace mgg::kernels {

namespace {

using detail::Vtable;

struct Dispatch {
  const Vtable* table;
  Isa isa;
  Dispatch() {
    if (const Vtable* avx2 = detail::avx2_vtable()) {
      table = avx2;
      isa = Isa::Avx2;
    } else {
      table = detail::scalar_vtable();
      isa = Isa::Scalar;
    }
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Isa active_isa() { return dispatch().isa; }

bool set_isa(Isa isa) {
  const Vtable* table = isa == Isa::Avx2 ? detail::avx2_vtable() : detail::scalar_vtable();
  if (!table) return false;
  dispatch().table = table;
  dispatch().isa = isa;
  return true;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double exp_sum(const double* x, double* y, std::size_t n) { return dispatch().table->exp_sum(x, y, n); }
void v_exp(const double* x, double* y, std::size_t n) { dispatch().table->v_exp(x, y, n); }
void v_log(const double* x, double* y, std::size_t n) { dispatch().table->v_log(x, y, n); }
void sigmoid_pair(const double* z, double* s, double* om, std::size_t n) {
  dispatch().table->sigmoid_pair(z, s, om, n);
}
void v_digamma21(const double* s, double* y, std::size_t n) { dispatch().table->v_digamma21(s, y, n); }
void v_lgamma21(const double* s, double* y, std::size_t n) { dispatch().table->v_lgamma21(s, y, n); }
double sum(const double* x, std::size_t n) { return dispatch().table->sum(x, n); }
double sum_sq(const double* x, std::size_t n) { return dispatch().table->sum_sq(x, n); }
double dot(const double* a, const double* b, std::size_t n) { return dispatch().table->dot(a, b, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { dispatch().table->axpy(a, x, y, n); }
void grad_weights(const double* w, const double* m, const double* s, double coef, double* g,
                  std::size_t n) {
  dispatch().table->grad_weights(w, m, s, coef, g, n);
}
void grad_indices(const double* s, const double* om, const double* v, double log_c, double* g,
                  std::size_t n) {
  dispatch().table->grad_indices(s, om, v, log_c, g, n);
}
double index_logpost_sum(const double* s, const double* om, const double* v, double log_c,
                         std::size_t n) {
  return dispatch().table->index_logpost_sum(s, om, v, log_c, n);
}

}  // namespace mgg::kernels
