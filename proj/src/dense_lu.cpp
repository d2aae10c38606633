#include "mdspline/dense_lu.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "mdspline/error.hpp"

namespace mdspline {

std::vector<real> DenseMatrix::multiply(std::span<const real> v) const {
  std::vector<real> out(n_, 0.0);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

LuResult lu_solve(const DenseMatrix& m, const std::vector<real>& b) {
  const int n = m.size();
  std::vector<real> a(static_cast<std::size_t>(n) * n);
  std::vector<real> rhs(b.begin(), b.end());
  const auto A = [&](int r, int c) -> real& { return a[static_cast<std::size_t>(r) * n + c]; };
  real scale = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      A(r, c) = m(r, c);
      scale = std::max(scale, abs_real(A(r, c)));
    }
  const real tiny = real(1e-12) * scale;

  real max_pivot = 0.0, min_pivot = real(1e300);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (abs_real(A(r, k)) > abs_real(A(piv, k))) piv = r;
    const real p = abs_real(A(piv, k));
    if (!(p > tiny)) {
      std::ostringstream msg;
      msg << "singular Hermite system: pivot " << static_cast<double>(p) << " at step " << k << " of " << n
          << " (pivot ratio so far "
          << static_cast<double>(min_pivot > 0 ? max_pivot / min_pivot : real(1e300)) << ")";
      fail(ErrorKind::singular, msg.str());
    }
    max_pivot = std::max(max_pivot, p);
    min_pivot = std::min(min_pivot, p);
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(A(k, c), A(piv, c));
      std::swap(rhs[k], rhs[piv]);
    }
    for (int r = k + 1; r < n; ++r) {
      const real f = A(r, k) / A(k, k);
      if (f == 0.0) continue;
      A(r, k) = 0.0;
      for (int c = k + 1; c < n; ++c) A(r, c) -= f * A(k, c);
      rhs[r] -= f * rhs[k];
    }
  }
  std::vector<real> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    real s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= A(r, c) * x[c];
    x[r] = s / A(r, r);
  }
  LuResult out;
  out.x = std::move(x);
  out.pivot_ratio = n > 0 ? static_cast<double>(max_pivot / min_pivot) : 1.0;
  return out;
}

}  // namespace mdspline
