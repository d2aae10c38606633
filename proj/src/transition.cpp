#include "mdspline/transition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mdspline/dense_lu.hpp"

namespace mdspline {

EndpointOrders endpoint_orders(const SplineSpace& space, const ExtendedPartitions& parts, int i) {
  if (i < 1 || i > parts.size())
    fail(ErrorKind::out_of_range, "knot index " + std::to_string(i) + " outside 1..K");
  EndpointOrders o;
  o.ks = space.degree(parts.ps(i)) - parts.s_run_after(i) - 1;
  o.kt = space.degree(parts.pt(i) - 1) - parts.t_run_before(i) - 1;
  return o;
}

namespace {

PiecewisePoly step_function(const SplineSpace& space, int first, int last, bool flip = false) {
  std::vector<BernsteinPiece> pieces;
  pieces.reserve(space.intervals());
  for (int j = 0; j < space.intervals(); ++j) {
    double v = j < first ? 0.0 : (j >= last ? 1.0 : 0.0);
    if (flip && (j < first || j >= last)) v = 1.0 - v;
    pieces.push_back(BernsteinPiece::constant(space.x(j), space.x(j + 1), space.degree(j), v));
  }
  return PiecewisePoly(std::move(pieces));
}

// Derivative weights at one end of a degree-d piece, multiplied by hmin^r:
// d!/(d-r)! (hmin/h)^r times the signed binomials of the r-th difference.
std::vector<real> scaled_weights(int d, real ratio, Side side, int r) {
  real scale = real(1);
  for (int l = 0; l < r; ++l) scale *= (d - l) * ratio;
  std::vector<real> w(d + 1, real(0));
  const int base = side == Side::left ? 0 : d - r;
  real binom = real(1);
  for (int l = 0; l <= r; ++l) {
    w[base + l] = (((r - l) % 2 == 0) ? scale : -scale) * binom;
    binom = binom * (r - l) / (l + 1);
  }
  return w;
}

}  // namespace

TransitionFunction solve_transition(const SplineSpace& space, const ExtendedPartitions& parts,
                                    int i) {
  const int K = parts.size();
  if (i < 1 || i > K)
    fail(ErrorKind::out_of_range, "transition index " + std::to_string(i) + " outside 1..K");

  TransitionFunction tf;
  tf.index = i;
  if (i == 1) {
    tf.poly = step_function(space, 0, 0);
    tf.complement = step_function(space, 0, 0, true);
    tf.k_s = endpoint_orders(space, parts, 1).ks;
    return tf;
  }

  const int first = parts.ps(i);
  const int last = parts.pt(i - 1);
  tf.first_interval = first;
  tf.last_interval = last;
  tf.k_s = endpoint_orders(space, parts, i).ks;
  tf.k_t = endpoint_orders(space, parts, i - 1).kt;
  if (first >= last)
    fail(ErrorKind::internal, "transition f_" + std::to_string(i) + " has an empty nontrivial range");

  const int zeros = std::max(tf.k_s + 1, 0);
  const int ones = std::max(tf.k_t + 1, 0);

  // Square-system identity: pinned end conditions equal the dimension of the
  // space restricted to [s_i, t_{i-1}].
  int restricted_dim = space.degree(last - 1) + 1;
  for (int j = first + 1; j <= last - 1; ++j)
    restricted_dim += space.degree(j - 1) - space.continuity(j);
  if (zeros + ones != restricted_dim)
    fail(ErrorKind::internal, "Hermite system for f_" + std::to_string(i) + " is not square (" +
                                  std::to_string(zeros + ones) + " end conditions vs dimension " +
                                  std::to_string(restricted_dim) + ")");

  // Global coefficient numbering over the nontrivial pieces.
  std::vector<int> offset;
  int total = 0;
  for (int j = first; j < last; ++j) {
    offset.push_back(total);
    total += space.degree(j) + 1;
  }
  constexpr int kFree = -1;
  std::vector<double> pinned(total, 0.0);
  std::vector<int> unknown_of(total, kFree);
  std::vector<bool> is_pinned(total, false);
  for (int h = 0; h < zeros; ++h) is_pinned[h] = true;
  for (int h = 0; h < ones; ++h) {
    is_pinned[total - 1 - h] = true;
    pinned[total - 1 - h] = 1.0;
  }
  if (zeros + ones > total)
    fail(ErrorKind::internal, "pinned coefficients overlap for f_" + std::to_string(i));
  int n = 0;
  for (int g = 0; g < total; ++g)
    if (!is_pinned[g]) unknown_of[g] = n++;

  std::vector<double> coeffs(pinned);
  std::vector<double> comp(total);
  for (int g = 0; g < total; ++g) comp[g] = is_pinned[g] ? 1.0 - pinned[g] : 0.0;
  if (n > 0) {
    DenseMatrix A(n);
    std::vector<real> rhs(n, real(0)), rhs_c(n, real(0));
    int row = 0;
    for (int j = first + 1; j <= last - 1; ++j) {
      const int dl = space.degree(j - 1), dr = space.degree(j);
      const real hl = static_cast<real>(space.x(j)) - space.x(j - 1);
      const real hr = static_cast<real>(space.x(j + 1)) - space.x(j);
      const real hmin = std::min(hl, hr);
      const int kj = space.continuity(j);
      const ConnectionMatrix M = space.connection(j);
      const int ol = offset[j - 1 - first], orr = offset[j - first];
      // Row r: sum_c M(r,c) D^c_- f(x_j) - D^r_+ f(x_j) = 0, scaled by hmin^r.
      for (int r = 0; r <= kj; ++r) {
        if (row >= n) fail(ErrorKind::internal, "too many continuity rows");
        std::vector<real> wl(dl + 1, real(0));
        for (int c = 0; c <= r; ++c) {
          const real m = M(r, c);
          if (m == real(0)) continue;
          // M(r,c) D^c scaled by hmin^r = M(r,c) hmin^(r-c) (hmin^c D^c).
          real lift = real(1);
          for (int l = c; l < r; ++l) lift *= hmin;
          const auto w = scaled_weights(dl, hmin / hl, Side::right, c);
          for (int h = 0; h <= dl; ++h) wl[h] += m * lift * w[h];
        }
        const auto wr = scaled_weights(dr, hmin / hr, Side::left, r);
        auto put = [&](int g, real w) {
          if (w == real(0)) return;
          if (is_pinned[g]) {
            rhs[row] -= w * pinned[g];
            rhs_c[row] -= w * comp[g];
          } else
            A(row, unknown_of[g]) += w;
        };
        for (int h = 0; h <= dl; ++h) put(ol + h, wl[h]);
        for (int h = 0; h <= dr; ++h) put(orr + h, -wr[h]);
        ++row;
      }
    }
    if (row != n)
      fail(ErrorKind::internal, "Hermite system for f_" + std::to_string(i) + " has " +
                                    std::to_string(row) + " rows for " + std::to_string(n) +
                                    " unknowns");
    const LuResult sol = lu_solve(A, rhs);
    const auto Ax = A.multiply(sol.x);
    real res = real(0), rhs_norm = real(1);
    for (int r = 0; r < n; ++r) {
      res = std::max(res, abs_real(Ax[r] - rhs[r]));
      rhs_norm = std::max(rhs_norm, abs_real(rhs[r]));
    }
    tf.residual = static_cast<double>(res / rhs_norm);
    tf.pivot_ratio = sol.pivot_ratio;
    const LuResult sol_c = lu_solve(A, rhs_c);
    for (int g = 0; g < total; ++g)
      if (!is_pinned[g]) {
        coeffs[g] = static_cast<double>(sol.x[unknown_of[g]]);
        comp[g] = static_cast<double>(sol_c.x[unknown_of[g]]);
      }
  } else if (last - first != 1) {
    fail(ErrorKind::internal, "multi-interval transition without unknowns");
  }
  tf.unknowns = n;

  tf.poly = step_function(space, first, last);
  tf.complement = step_function(space, first, last, true);
  for (int j = first; j < last; ++j) {
    const auto at = offset[j - first];
    std::copy_n(coeffs.begin() + at, space.degree(j) + 1, tf.poly.piece(j).coeffs.begin());
    std::copy_n(comp.begin() + at, space.degree(j) + 1, tf.complement.piece(j).coeffs.begin());
  }
  return tf;
}

TransitionSet::TransitionSet(std::shared_ptr<const SplineSpace> space,
                             std::shared_ptr<const ExtendedPartitions> parts,
                             std::vector<TransitionFunction> fns)
    : space_(std::move(space)), parts_(std::move(parts)), fns_(std::move(fns)) {}

TransitionSet solve_all(std::shared_ptr<const SplineSpace> space,
                        std::shared_ptr<const ExtendedPartitions> parts) {
  std::vector<TransitionFunction> fns;
  fns.reserve(parts->size());
  for (int i = 1; i <= parts->size(); ++i) fns.push_back(solve_transition(*space, *parts, i));
  return TransitionSet(std::move(space), std::move(parts), std::move(fns));
}

TransitionSet solve_all(const SplineSpace& space) {
  auto sp = std::make_shared<const SplineSpace>(space);
  auto parts = std::make_shared<const ExtendedPartitions>(extended_partitions(space));
  return solve_all(std::move(sp), std::move(parts));
}

TaylorSigns taylor_signs(const TransitionFunction& f) {
  TaylorSigns out;
  if (f.index == 1) return out;
  const auto& first = f.poly.piece(f.first_interval);
  const auto& last = f.poly.piece(f.last_interval - 1);
  out.at_start = endpoint_derivative(first, Side::left, f.k_s + 1);
  const double sign = (f.k_t % 2 == 0) ? 1.0 : -1.0;
  out.at_end = sign * endpoint_derivative(last, Side::right, f.k_t + 1);
  return out;
}

}  // namespace mdspline
