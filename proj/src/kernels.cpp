#include "sta/kernels.hpp"

namespace sta::kernels {

namespace ref {

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void abs2(const cplx* a, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double sum_abs2(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  return s;
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void scale(cplx* a, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

}  // namespace ref

const Backend* avx2_backend();  // nullptr when unavailable

namespace {

const Backend scalar_backend = {"scalar",   ref::cmul, ref::abs2, ref::sum_abs2,
                                ref::weighted_sum_abs2, ref::cdot, ref::scale};

const Backend& select() {
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    if (const Backend* b = avx2_backend()) return *b;
  }
#endif
  return scalar_backend;
}

}  // namespace

const Backend& backend() {
  static const Backend& b = select();
  return b;
}

}  // namespace sta::kernels
