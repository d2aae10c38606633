#include "mdspline/kernels.hpp"

#include <cstddef>

namespace mdspline::kernels {

void bernstein_eval_scalar(std::span<const double> coeffs, std::span<const double> u,
                           std::span<double> out) {
  const std::size_t n = coeffs.size();
  double w[32];
  for (std::size_t p = 0; p < u.size(); ++p) {
    for (std::size_t h = 0; h < n; ++h) w[h] = coeffs[h];
    const double t = u[p];
    const double s = 1.0 - t;
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t h = 0; h + r < n; ++h) w[h] = s * w[h] + t * w[h + 1];
    out[p] = w[0];
  }
}

}  // namespace mdspline::kernels
