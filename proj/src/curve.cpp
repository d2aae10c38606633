#include "mdspline/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdspline {

namespace {

std::shared_ptr<const BSplineBasis> build_basis(const SplineSpace& space) {
  auto sp = std::make_shared<const SplineSpace>(space);
  auto parts = std::make_shared<const ExtendedPartitions>(extended_partitions(space));
  auto ts = std::make_shared<const TransitionSet>(solve_all(sp, parts));
  return std::make_shared<const BSplineBasis>(basis_from_transitions(std::move(ts)));
}

void check_dim(int dim) {
  if (dim < 1 || dim > 3) fail(ErrorKind::validation, "curve dimension must be 1, 2 or 3");
}

}  // namespace

MDCurve::MDCurve(const SplineSpace& space, std::vector<Point> control_points, int dim)
    : MDCurve(build_basis(space), std::move(control_points), dim) {}

MDCurve::MDCurve(std::shared_ptr<const BSplineBasis> basis, std::vector<Point> control_points,
                 int dim)
    : basis_(std::move(basis)), cps_(std::move(control_points)), dim_(dim) {
  check_dim(dim_);
  if (static_cast<int>(cps_.size()) != basis_->size())
    fail(ErrorKind::validation, "expected " + std::to_string(basis_->size()) +
                                    " control points, got " + std::to_string(cps_.size()));
  if (basis_->transitions() == nullptr)
    fail(ErrorKind::precondition, "curves require a transition-function basis");
}

Point MDCurve::operator()(double x) const {
  const LocalBasis lb = eval_basis(*basis_, x);
  Point p{0.0, 0.0, 0.0};
  for (int h = 0; h < static_cast<int>(lb.values.size()); ++h) {
    const Point& c = cps_[lb.first + h - 1];
    for (int k = 0; k < dim_; ++k) p[k] += lb.values[h] * c[k];
  }
  return p;
}

Point MDCurve::derivative(double x, int r, Side side) const {
  const auto& sp = space();
  int j = sp.locate(x);
  if (side == Side::left && j > 0 && x == sp.x(j)) --j;
  const int d = sp.degree(j);
  const int first = active_last_index(sp, partitions(), j) - d;
  Point p{0.0, 0.0, 0.0};
  for (int i = first; i <= first + d; ++i) {
    BernsteinPiece piece = basis_->N(i).piece(j);
    for (int l = 0; l < r; ++l) piece = mdspline::derivative(piece);
    const double v = eval(piece, x);
    for (int k = 0; k < dim_; ++k) p[k] += v * cps_[i - 1][k];
  }
  return p;
}

MDCurve MDCurve::with_point(int i, const Point& p) const {
  if (i < 1 || i > size())
    fail(ErrorKind::out_of_range, "control point index " + std::to_string(i) + " outside 1..K");
  auto cps = cps_;
  cps[i - 1] = p;
  return MDCurve(basis_, std::move(cps), dim_);
}

RawSpace space_after_insertion(const SplineSpace& space, double s_hat) {
  if (!(s_hat > space.a() && s_hat < space.b()))
    fail(ErrorKind::precondition, "knot must lie strictly inside (a,b)");
  RawSpace raw = space.raw();
  const int j = space.locate(s_hat);
  if (s_hat == space.x(j)) {
    int& k = raw.continuities[j - 1];
    if (k == 0)
      fail(ErrorKind::precondition, "continuity at break-point x_" + std::to_string(j) +
                                        " is already C^0; cannot insert another knot");
    --k;
    if (raw.connections) {
      auto& M = (*raw.connections)[j - 1];
      M = M.leading(k + 1);
    }
    return raw;
  }
  const int d = space.degree(j);
  raw.breakpoints.insert(raw.breakpoints.begin() + j, s_hat);
  raw.degrees.insert(raw.degrees.begin() + j + 1, d);
  raw.continuities.insert(raw.continuities.begin() + j, d - 1);
  if (raw.connections)
    raw.connections->insert(raw.connections->begin() + j, ConnectionMatrix::identity(d));
  return raw;
}

RawSpace space_after_elevation(const SplineSpace& space, int j) {
  if (j < 0 || j > space.q())
    fail(ErrorKind::precondition, "interval index " + std::to_string(j) + " outside 0.." +
                                      std::to_string(space.q()));
  RawSpace raw = space.raw();
  ++raw.degrees[j];
  return raw;
}

namespace {

// alpha/beta from endpoint derivatives of old and refined transition functions
// for i in [first, last]; 1 below, 0 above.
RefinementCoefficients coefficients(const TransitionSet& old_ts, const TransitionSet& new_ts,
                                    int first, int last) {
  const auto& parts = old_ts.partitions();
  const int K = old_ts.size();
  RefinementCoefficients rc;
  rc.first = first;
  rc.last = last;
  rc.alpha.assign(K + 2, 0.0);
  rc.beta.assign(K + 2, 0.0);
  for (int i = 1; i <= K; ++i) {
    if (i < first) {
      rc.alpha[i] = 1.0;
      rc.beta[i] = 0.0;
    } else if (i > last) {
      rc.alpha[i] = 0.0;
      rc.beta[i] = 1.0;
    } else {
      const auto& f = old_ts.f(i);
      const int ks = f.k_s + 1;
      const double num = f.poly.derivative_at(parts.s(i), ks, Side::right);
      const double den = new_ts.f(i).poly.derivative_at(parts.s(i), ks, Side::right);
      if (!(den > 0.0))
        fail(ErrorKind::internal, "refined transition violates the Taylor sign at s_" +
                                      std::to_string(i));
      rc.alpha[i] = num / den;
      const int kt = f.k_t + 1;
      // Derivatives of 1 - f near t, where f itself has lost its digits.
      const double tnum = f.complement.derivative_at(parts.t(i - 1), kt, Side::left);
      const double tden = new_ts.f(i + 1).complement.derivative_at(parts.t(i - 1), kt, Side::left);
      if (tden == 0.0)
        fail(ErrorKind::internal, "refined transition violates the Taylor sign at t_" +
                                      std::to_string(i - 1));
      rc.beta[i] = tnum / tden;
    }
  }
  return rc;
}

std::vector<Point> refine_points(const std::vector<Point>& c, const RefinementCoefficients& rc) {
  const int K = static_cast<int>(c.size());
  std::vector<Point> out(K + 1);
  for (int i = 1; i <= K + 1; ++i) {
    Point p{};
    if (i < rc.first) {
      p = c[i - 1];
    } else if (i > rc.last) {
      p = c[i - 2];
    } else {
      const double a = rc.alpha[i];
      for (int k = 0; k < 3; ++k) p[k] = a * c[i - 1][k] + (1.0 - a) * c[i - 2][k];
    }
    out[i - 1] = p;
  }
  return out;
}

}  // namespace

Refinement insert_knot(const MDCurve& curve, double s_hat) {
  const auto& sp = curve.space();
  const auto& parts = curve.partitions();
  const SplineSpace refined = validate_space(space_after_insertion(sp, s_hat));
  auto basis = build_basis(refined);
  const int j = sp.locate(s_hat);
  const int ell = parts.last_s_at_or_before(s_hat);
  const auto& s_new = basis->partitions().s_knots();
  const int r = static_cast<int>(std::count(s_new.begin(), s_new.end(), s_hat));
  const int d = sp.degree(j);
  auto rc = coefficients(curve.transitions(), *basis->transitions(), ell - d + 1, ell - r + 1);
  rc.ell = ell;
  rc.degree = d;
  rc.mult = r;
  auto cps = refine_points(curve.control_points(), rc);
  return {MDCurve(std::move(basis), std::move(cps), curve.dim()), std::move(rc)};
}

Refinement elevate_degree_once(const MDCurve& curve, int j) {
  const auto& sp = curve.space();
  const SplineSpace elevated = validate_space(space_after_elevation(sp, j));
  auto basis = build_basis(elevated);
  const int ell = active_last_index(sp, curve.partitions(), j);
  const int d = sp.degree(j);
  auto rc = coefficients(curve.transitions(), *basis->transitions(), ell - d + 1, ell);
  rc.ell = ell;
  rc.degree = d;
  auto cps = refine_points(curve.control_points(), rc);
  return {MDCurve(std::move(basis), std::move(cps), curve.dim()), std::move(rc)};
}

MDCurve elevate_degree(const MDCurve& curve, int j, int times) {
  if (times < 0) fail(ErrorKind::precondition, "elevation count must be nonnegative");
  if (j < 0 || j > curve.space().q())
    fail(ErrorKind::precondition, "interval index " + std::to_string(j) + " outside 0.." +
                                      std::to_string(curve.space().q()));
  MDCurve out = curve;
  for (int t = 0; t < times; ++t) out = elevate_degree_once(out, j).curve;
  return out;
}

BezierSegmentList to_bezier(const MDCurve& curve) {
  const auto& sp = curve.space();
  const auto& basis = curve.basis();
  BezierSegmentList out;
  for (int j = 0; j < sp.intervals(); ++j) {
    const int d = sp.degree(j);
    const int ell = active_last_index(sp, curve.partitions(), j);
    BezierSegment seg;
    seg.interval = j;
    seg.lo = sp.x(j);
    seg.hi = sp.x(j + 1);
    seg.points.assign(d + 1, Point{0.0, 0.0, 0.0});
    for (int i = ell - d; i <= ell; ++i) {
      const auto& coeffs = basis.N(i).piece(j).coeffs;
      const Point& c = curve.control_points()[i - 1];
      for (int h = 0; h <= d; ++h)
        for (int k = 0; k < curve.dim(); ++k) seg.points[h][k] += c[k] * coeffs[h];
    }
    out.push_back(std::move(seg));
  }
  return out;
}

Point eval_bezier(const BezierSegmentList& segments, double x) {
  if (segments.empty() || !(x >= segments.front().lo && x <= segments.back().hi))
    fail(ErrorKind::out_of_range, "x outside the Bezier segment list");
  const auto it = std::upper_bound(segments.begin(), segments.end(), x,
                                   [](double v, const BezierSegment& s) { return v < s.lo; });
  const auto& seg = *std::prev(it == segments.begin() ? std::next(it) : it);
  const double u = (x - seg.lo) / (seg.hi - seg.lo);
  Point p{};
  std::vector<double> coord(seg.points.size());
  for (int k = 0; k < 3; ++k) {
    for (std::size_t h = 0; h < seg.points.size(); ++h) coord[h] = seg.points[h][k];
    p[k] = de_casteljau(coord, u);
  }
  return p;
}

MDCurve to_conventional(const MDCurve& curve) {
  MDCurve out = curve;
  const int m = curve.space().max_degree();
  for (int j = 0; j <= curve.space().q(); ++j)
    while (out.space().degree(j) < m) out = elevate_degree_once(out, j).curve;
  return out;
}

double max_deviation(const MDCurve& lhs, const MDCurve& rhs, int samples) {
  const double a = lhs.space().a(), b = lhs.space().b();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = a + (b - a) * s / (samples - 1);
    const Point p = lhs(x), q = rhs(x);
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) d2 += (p[k] - q[k]) * (p[k] - q[k]);
    worst = std::max(worst, std::sqrt(d2));
  }
  return worst;
}

}  // namespace mdspline
