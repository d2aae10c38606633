// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cstddef>

#include "mdspline/kernels.hpp"

namespace mdspline::kernels {

void bernstein_eval_avx2(std::span<const double> coeffs, std::span<const double> u,
                         std::span<double> out) {
  const std::size_t n = coeffs.size();
  const std::size_t count = u.size();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d w[32];
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    const __m256d t = _mm256_loadu_pd(u.data() + p);
    const __m256d s = _mm256_sub_pd(one, t);
    for (std::size_t h = 0; h < n; ++h) w[h] = _mm256_set1_pd(coeffs[h]);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t h = 0; h + r < n; ++h)
        w[h] = _mm256_add_pd(_mm256_mul_pd(s, w[h]), _mm256_mul_pd(t, w[h + 1]));
    _mm256_storeu_pd(out.data() + p, w[0]);
  }
  if (p < count)
    bernstein_eval_scalar(coeffs, u.subspan(p), out.subspan(p));
}

}  // namespace mdspline::kernels
