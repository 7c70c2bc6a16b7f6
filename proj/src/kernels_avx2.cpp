#include "datamin/kernels.hpp"

#ifdef DATAMIN_HAVE_AVX2

#include <immintrin.h>

namespace datamin::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double sq_dist(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    out += d * d;
  }
  return out;
}

MaskedSqDist masked_sq_dist(const double* a, const double* b,
                            const std::uint8_t* keep, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d cnt = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // widen the 0/1 byte flags to a 0.0/1.0 multiplier
    int packed;
    __builtin_memcpy(&packed, keep + i, sizeof(packed));
    __m128i bytes = _mm_cvtsi32_si128(packed);
    __m128i ints = _mm_cvtepu8_epi32(bytes);
    __m256d w = _mm256_cvtepi32_pd(ints);
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    d = _mm256_mul_pd(d, w);
    acc = _mm256_fmadd_pd(d, d, acc);
    cnt = _mm256_add_pd(cnt, w);
  }
  MaskedSqDist out;
  out.sum = hsum(acc);
  out.count = static_cast<std::size_t>(hsum(cnt) + 0.5);
  for (; i < n; ++i) {
    if (keep[i]) {
      const double d = a[i] - b[i];
      out.sum += d * d;
      ++out.count;
    }
  }
  return out;
}

}  // namespace datamin::kernels::avx2

#endif  // DATAMIN_HAVE_AVX2
