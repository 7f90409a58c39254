#pragma once

#include <cstddef>

#include "sta/su2.hpp"

// Hot array operations for the grid propagator. Scalar reference
// implementations live in kernels::ref and are always available; a runtime
// check picks an AVX2/FMA variant on hardware that has it. The two paths are
// equivalence-tested against each other.
namespace sta::kernels {

namespace ref {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void abs2(const cplx* a, double* out, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n);
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
void scale(cplx* a, double s, std::size_t n);
}  // namespace ref

struct Backend {
  const char* name;
  void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t);
  void (*abs2)(const cplx*, double*, std::size_t);
  double (*sum_abs2)(const cplx*, std::size_t);
  double (*weighted_sum_abs2)(const cplx*, const double*, std::size_t);
  cplx (*cdot)(const cplx*, const cplx*, std::size_t);
  void (*scale)(cplx*, double, std::size_t);
};

// Selected once per process.
const Backend& backend();

inline void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  backend().cmul(a, b, out, n);
}
inline void abs2(const cplx* a, double* out, std::size_t n) { backend().abs2(a, out, n); }
inline double sum_abs2(const cplx* a, std::size_t n) { return backend().sum_abs2(a, n); }
inline double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) {
  return backend().weighted_sum_abs2(a, w, n);
}
inline cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return backend().cdot(a, b, n); }
inline void scale(cplx* a, double s, std::size_t n) { backend().scale(a, s, n); }

}  // namespace sta::kernels
