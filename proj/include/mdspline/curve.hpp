#pragma once

#include <array>
#include <memory>
#include <vector>

#include "mdspline/basis.hpp"

namespace mdspline {

/// Control point; coordinates beyond the curve dimension are zero.
using Point = std::array<double, 3>;

/// Parametric MD-spline curve f(x) = sum_i c_i N_i(x) in R^dim, dim in {1,2,3}.
class MDCurve {
 public:
  /// Builds the basis of the space from its transition functions.
  MDCurve(const SplineSpace& space, std::vector<Point> control_points, int dim);
  MDCurve(std::shared_ptr<const BSplineBasis> basis, std::vector<Point> control_points, int dim);

  const SplineSpace& space() const { return basis_->space(); }
  const ExtendedPartitions& partitions() const { return basis_->partitions(); }
  const BSplineBasis& basis() const { return *basis_; }
  std::shared_ptr<const BSplineBasis> basis_ptr() const { return basis_; }
  const TransitionSet& transitions() const { return *basis_->transitions(); }
  const std::vector<Point>& control_points() const { return cps_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(cps_.size()); }

  Point operator()(double x) const;
  /// One-sided r-th derivative.
  Point derivative(double x, int r, Side side) const;

  /// Copy with control point i (1-based) replaced.
  MDCurve with_point(int i, const Point& p) const;

 private:
  std::shared_ptr<const BSplineBasis> basis_;
  std::vector<Point> cps_;
  int dim_;
};

/// Coefficients relating the bases of a space and its refinement:
/// f_i = alpha_i fhat_i + beta_i fhat_{i+1}, with alpha/beta indexed 1..K
/// (index 0 unused) and alpha_{K+1} = 0.
struct RefinementCoefficients {
  int ell = 0;       // l with s_l <= location < min(s_{l+1}, b)
  int degree = 0;    // d_j of the affected interval
  int mult = 0;      // multiplicity r of the new knot (insertion only)
  int first = 0;     // first index with a computed alpha
  int last = -1;     // last index with a computed alpha
  std::vector<double> alpha;
  std::vector<double> beta;

  double a(int i) const { return i < static_cast<int>(alpha.size()) ? alpha[i] : 0.0; }
};

struct Refinement {
  MDCurve curve;
  RefinementCoefficients coeffs;
};

/// Space obtained by inserting one knot at s_hat (new break-point of
/// continuity d_j-1, or continuity decrement at an existing break-point).
RawSpace space_after_insertion(const SplineSpace& space, double s_hat);
/// Space with the degree of interval j raised by one.
RawSpace space_after_elevation(const SplineSpace& space, int j);

Refinement insert_knot(const MDCurve& curve, double s_hat);
Refinement elevate_degree_once(const MDCurve& curve, int j);
MDCurve elevate_degree(const MDCurve& curve, int j, int times);

struct BezierSegment {
  int interval = 0;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<Point> points;  // degree+1 Bernstein control points
  int degree() const { return static_cast<int>(points.size()) - 1; }
};

using BezierSegmentList = std::vector<BezierSegment>;

BezierSegmentList to_bezier(const MDCurve& curve);
/// de Casteljau on the segment containing x.
Point eval_bezier(const BezierSegmentList& segments, double x);

/// Uniform degree m spline with the same point set.
MDCurve to_conventional(const MDCurve& curve);

/// Max distance between two curves over n uniform samples of [a,b].
double max_deviation(const MDCurve& lhs, const MDCurve& rhs, int samples);

}  // namespace mdspline
