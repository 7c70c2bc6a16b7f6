#include "datamin/kernels.hpp"

namespace datamin::kernels {

namespace {

bool detect_avx2() {
#if defined(DATAMIN_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const bool g_use_avx2 = detect_avx2();

}  // namespace

bool avx2_active() { return g_use_avx2; }

double dot(const double* a, const double* b, std::size_t n) {
#ifdef DATAMIN_HAVE_AVX2
  if (g_use_avx2) return avx2::dot(a, b, n);
#endif
  return scalar::dot(a, b, n);
}

double sq_dist(const double* a, const double* b, std::size_t n) {
#ifdef DATAMIN_HAVE_AVX2
  if (g_use_avx2) return avx2::sq_dist(a, b, n);
#endif
  return scalar::sq_dist(a, b, n);
}

MaskedSqDist masked_sq_dist(const double* a, const double* b,
                            const std::uint8_t* keep, std::size_t n) {
#ifdef DATAMIN_HAVE_AVX2
  if (g_use_avx2) return avx2::masked_sq_dist(a, b, keep, n);
#endif
  return scalar::masked_sq_dist(a, b, keep, n);
}

}  // namespace datamin::kernels
