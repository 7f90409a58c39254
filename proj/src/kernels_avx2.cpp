#include "sta/kernels.hpp"

// Built with -mavx2 -mfma on x86-64; a stub elsewhere. Complex doubles are
// interleaved re/im, so one 256-bit register holds two complex values.

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace sta::kernels {

namespace {

void cmul_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d are = _mm256_movedup_pd(va);
    const __m256d aim = _mm256_permute_pd(va, 0xF);
    const __m256d bsw = _mm256_permute_pd(vb, 0x5);
    _mm256_storeu_pd(po + 2 * i, _mm256_fmaddsub_pd(are, vb, _mm256_mul_pd(aim, bsw)));
  }
  if (i < n) ref::cmul(a + i, b + i, out + i, n - i);
}

// |c0|^2 |c1|^2 |c2|^2 |c3|^2 from two registers, in order
inline __m256d abs2_pack(__m256d v0, __m256d v1) {
  const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
  return _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
}

void abs2_avx2(const cplx* a, double* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(pa + 2 * i + 4);
    _mm256_storeu_pd(out + i, abs2_pack(v0, v1));
  }
  if (i < n) ref::abs2(a + i, out + i, n - i);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_abs2_avx2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  if (i < n) s += ref::sum_abs2(a + i, n - i);
  return s;
}

double weighted_sum_abs2_avx2(const cplx* a, const double* w, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(pa + 2 * i + 4);
    acc = _mm256_fmadd_pd(abs2_pack(v0, v1), _mm256_loadu_pd(w + i), acc);
  }
  double s = hsum(acc);
  if (i < n) s += ref::weighted_sum_abs2(a + i, w + i, n - i);
  return s;
}

cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d are = _mm256_movedup_pd(va);
    const __m256d aim = _mm256_permute_pd(va, 0xF);
    const __m256d bsw = _mm256_permute_pd(vb, 0x5);
    // even lanes re = ar br + ai bi, odd lanes im = ar bi - ai br
    acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(are, vb, _mm256_mul_pd(aim, bsw)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx s(lanes[0] + lanes[2], lanes[1] + lanes[3]);
  if (i < n) s += ref::cdot(a + i, b + i, n - i);
  return s;
}

void scale_avx2(cplx* a, double s, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(pa + 2 * i), vs));
  if (i < n) ref::scale(a + i, s, n - i);
}

const Backend avx2_impl = {"avx2",
                           cmul_avx2,
                           abs2_avx2,
                           sum_abs2_avx2,
                           weighted_sum_abs2_avx2,
                           cdot_avx2,
                           scale_avx2};

}  // namespace

const Backend* avx2_backend() { return &avx2_impl; }

}  // namespace sta::kernels

#else

namespace sta::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace sta::kernels

#endif
