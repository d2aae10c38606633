#include <arm_neon.h>

#include <cstddef>

#include "mdspline/kernels.hpp"

namespace mdspline::kernels {

void bernstein_eval_neon(std::span<const double> coeffs, std::span<const double> u,
                         std::span<double> out) {
  const std::size_t n = coeffs.size();
  const std::size_t count = u.size();
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t w[32];
  std::size_t p = 0;
  for (; p + 2 <= count; p += 2) {
    const float64x2_t t = vld1q_f64(u.data() + p);
    const float64x2_t s = vsubq_f64(one, t);
    for (std::size_t h = 0; h < n; ++h) w[h] = vdupq_n_f64(coeffs[h]);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t h = 0; h + r < n; ++h)
        w[h] = vaddq_f64(vmulq_f64(s, w[h]), vmulq_f64(t, w[h + 1]));
    vst1q_f64(out.data() + p, w[0]);
  }
  if (p < count)
    bernstein_eval_scalar(coeffs, u.subspan(p), out.subspan(p));
}

}  // namespace mdspline::kernels
