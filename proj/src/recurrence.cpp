// Integral recurrence for the multi-degree B-spline basis, evaluated exactly
// in piecewise Bernstein arithmetic.

#include <algorithm>
#include <cmath>
#include <string>

#include "mdspline/basis.hpp"

namespace mdspline {

int RecurrenceLevel::count_nonzero() const {
  return static_cast<int>(std::count(is_zero.begin(), is_zero.end(), 0));
}

namespace {

struct Context {
  const SplineSpace& space;
  const ExtendedPartitions& parts;
  int K;
  int m;

  // Local degree of level-n functions on interval j; negative means zero there.
  int level_degree(int j, int n) const { return n - (m - space.degree(j)); }

  // Knot used as the step location of a vanished function with index i.
  double step_at(int i) const { return i <= K ? parts.s(i) : space.b(); }
};

// G(x) = integral_{-inf}^x delta N(u) du on every interval.
PiecewisePoly cumulative(const Context& ctx, const RecurrenceLevel& level, int i) {
  const auto& sp = ctx.space;
  std::vector<BernsteinPiece> pieces;
  pieces.reserve(sp.intervals());
  const PiecewisePoly* f = level.N(i);
  if (f == nullptr || level.is_zero[i - level.first_index]) {
    const double step = ctx.step_at(i);
    for (int j = 0; j < sp.intervals(); ++j)
      pieces.push_back(BernsteinPiece::constant(sp.x(j), sp.x(j + 1), 0, sp.x(j) >= step ? 1.0 : 0.0));
    return PiecewisePoly(std::move(pieces));
  }
  const double delta = level.delta[i - level.first_index];
  double running = 0.0;
  for (int j = 0; j < sp.intervals(); ++j) {
    BernsteinPiece p = f->piece(j);
    for (double& c : p.coeffs) c *= delta;
    BernsteinPiece g = antiderivative(p, running);
    running = g.coeffs.back();
    pieces.push_back(std::move(g));
  }
  return PiecewisePoly(std::move(pieces));
}

}  // namespace

RecurrenceResult integral_recurrence(std::shared_ptr<const SplineSpace> space_ptr,
                                     std::shared_ptr<const ExtendedPartitions> parts_ptr) {
  const SplineSpace& sp = *space_ptr;
  const ExtendedPartitions& parts = *parts_ptr;
  const Context ctx{sp, parts, parts.size(), sp.max_degree()};
  const int K = ctx.K, m = ctx.m;

  std::vector<RecurrenceLevel> levels;
  levels.reserve(m + 1);
  std::vector<PiecewisePoly> G;  // cumulative integrals of the previous level, index i (1..K+1)

  for (int n = 0; n <= m; ++n) {
    RecurrenceLevel lev;
    lev.n = n;
    lev.first_index = m + 1 - n;
    for (int i = lev.first_index; i <= K; ++i) {
      const int e = i - m + n;
      std::vector<BernsteinPiece> pieces;
      bool any = false;
      const bool proper = parts.s(i) < parts.t(e);
      for (int j = 0; j < sp.intervals(); ++j) {
        const int ld = ctx.level_degree(j, n);
        const bool inside = proper && parts.ps(i) <= j && j < parts.pt(e);
        BernsteinPiece p = BernsteinPiece::constant(sp.x(j), sp.x(j + 1), std::max(ld, 0), 0.0);
        if (ld == 0 && inside) {
          p.coeffs.assign(1, 1.0);
          any = true;
        } else if (ld > 0) {
          BernsteinPiece diff = G[i].piece(j);
          BernsteinPiece next = G[i + 1].piece(j);
          const int deg = std::max({diff.degree(), next.degree(), ld});
          diff = elevate_to(diff, deg);
          next = elevate_to(next, deg);
          for (int h = 0; h <= deg; ++h) diff.coeffs[h] -= next.coeffs[h];
          if (deg != ld)
            fail(ErrorKind::internal, "level degree mismatch in integral recurrence");
          if (inside) {
            p = std::move(diff);
            any = true;
          } else {
            double mx = 0.0;
            for (double c : diff.coeffs) mx = std::max(mx, std::abs(c));
            if (mx > 1e-9)
              fail(ErrorKind::internal, "N_{" + std::to_string(i) + "," + std::to_string(n) +
                                            "} is nonzero outside its support on interval " +
                                            std::to_string(j));
          }
        }
        pieces.push_back(std::move(p));
      }
      PiecewisePoly f(std::move(pieces));
      double delta = 0.0;
      if (any) {
        const double area = f.integral();
        if (!(area > 0.0))
          fail(ErrorKind::internal, "nonpositive integral for N_{" + std::to_string(i) + "," +
                                        std::to_string(n) + "}");
        delta = 1.0 / area;
      }
      lev.fns.push_back(std::move(f));
      lev.delta.push_back(delta);
      lev.is_zero.push_back(any ? 0 : 1);
    }

    G.assign(K + 2, PiecewisePoly{});
    for (int i = std::max(1, lev.first_index - 1); i <= K + 1; ++i) G[i] = cumulative(ctx, lev, i);
    levels.push_back(std::move(lev));
  }

  std::vector<PiecewisePoly> fns = levels.back().fns;
  BSplineBasis basis(std::move(space_ptr), std::move(parts_ptr), std::move(fns));
  return RecurrenceResult{std::move(levels), std::move(basis)};
}

BSplineBasis integral_recurrence_oracle(const SplineSpace& space) {
  auto sp = std::make_shared<const SplineSpace>(space);
  auto parts = std::make_shared<const ExtendedPartitions>(extended_partitions(space));
  return integral_recurrence(std::move(sp), std::move(parts)).basis;
}

std::optional<double> extract_phi(const RecurrenceResult& rec, int i, int n, double x) {
  const int m = static_cast<int>(rec.levels.size()) - 1;
  if (n < 1 || n > m) fail(ErrorKind::out_of_range, "level must be in 1..m");
  const auto& lo = rec.levels[n - 1];
  const auto& hi = rec.levels[n];
  if (i < lo.first_index || !lo.N(i))
    fail(ErrorKind::out_of_range, "phi index outside level");
  constexpr double kVanish = 1e-14;

  // N_{k,n} = phi_k N_{k,n-1} + (1 - phi_{k+1}) N_{k+1,n-1}, solved for phi_{k+1}
  // starting from k = m+1-n where N_{k,n-1} is undefined.
  std::optional<double> phi_k;  // phi_k^{n-1}(x), unset while unknown
  double prev_val = 0.0;        // N_{k,n-1}(x)
  for (int k = hi.first_index; k < i; ++k) {
    const double nk = (*hi.N(k))(x);
    const double next_val = (*lo.N(k + 1))(x);
    double carried = 0.0;
    if (std::abs(prev_val) > kVanish) {
      if (!phi_k) return std::nullopt;
      carried = *phi_k * prev_val;
    }
    if (std::abs(next_val) <= kVanish) {
      phi_k.reset();
    } else {
      phi_k = 1.0 - (nk - carried) / next_val;
    }
    prev_val = next_val;
  }
  return phi_k;
}

}  // namespace mdspline
