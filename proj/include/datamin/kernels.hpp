#pragma once

#include <cstddef>
#include <cstdint>

// Dense inner loops used by the attack and imputation paths. Each kernel has
// a scalar reference implementation and an AVX2 variant; the top-level entry
// points dispatch once at startup based on runtime CPU support. The scalar
// variants stay reachable so equivalence tests can compare both paths.
namespace datamin::kernels {

struct MaskedSqDist {
  double sum = 0.0;    // sum of squared diffs over kept coordinates
  std::size_t count = 0;  // number of kept coordinates
};

double dot(const double* a, const double* b, std::size_t n);
double sq_dist(const double* a, const double* b, std::size_t n);
MaskedSqDist masked_sq_dist(const double* a, const double* b,
                            const std::uint8_t* keep, std::size_t n);

bool avx2_active();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sq_dist(const double* a, const double* b, std::size_t n);
MaskedSqDist masked_sq_dist(const double* a, const double* b,
                            const std::uint8_t* keep, std::size_t n);
}  // namespace scalar

#ifdef DATAMIN_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sq_dist(const double* a, const double* b, std::size_t n);
MaskedSqDist masked_sq_dist(const double* a, const double* b,
                            const std::uint8_t* keep, std::size_t n);
}  // namespace avx2
#endif

}  // namespace datamin::kernels
