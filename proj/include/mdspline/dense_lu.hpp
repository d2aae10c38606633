#pragma once

#include <cfloat>
#include <span>
#include <vector>

namespace mdspline {

/// Scalar used for assembling and solving the Hermite systems: IEEE quad,
/// either as long double or as the __float128 extension.
#if LDBL_MANT_DIG < 113 && defined(__SIZEOF_FLOAT128__)
using real = __float128;
#else
using real = long double;
#endif

inline real abs_real(real v) { return v < 0 ? -v : v; }

/// Square row-major matrix with LU factorization by partial pivoting.
class DenseMatrix {
 public:
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  real& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
  real operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

  std::vector<real> multiply(std::span<const real> v) const;

 private:
  int n_;
  std::vector<real> a_;
};

struct LuResult {
  std::vector<real> x;
  /// Ratio of largest to smallest pivot magnitude; a cheap conditioning proxy.
  double pivot_ratio = 1.0;
};

/// Solves A x = rhs. Throws ErrorKind::singular when a pivot falls below
/// 1e-12 times the largest entry of A.
LuResult lu_solve(const DenseMatrix& a, const std::vector<real>& rhs);

}  // namespace mdspline
