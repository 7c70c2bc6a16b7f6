#include "datamin/kernels.hpp"

namespace datamin::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sq_dist(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

MaskedSqDist masked_sq_dist(const double* a, const double* b,
                            const std::uint8_t* keep, std::size_t n) {
  MaskedSqDist out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) {
      const double d = a[i] - b[i];
      out.sum += d * d;
      ++out.count;
    }
  }
  return out;
}

}  // namespace datamin::kernels::scalar
