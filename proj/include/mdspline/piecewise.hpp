#pragma once

#include <span>
#include <vector>

#include "mdspline/bernstein.hpp"

namespace mdspline {

/// Piecewise polynomial over consecutive break-point intervals, one Bernstein
/// piece per interval (degrees may differ between pieces).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  explicit PiecewisePoly(std::vector<BernsteinPiece> pieces);

  /// Zero function with the given per-interval degrees.
  static PiecewisePoly zeros(std::span<const double> nodes, std::span<const int> degrees);

  int intervals() const { return static_cast<int>(pieces_.size()); }
  const BernsteinPiece& piece(int j) const { return pieces_[j]; }
  BernsteinPiece& piece(int j) { return pieces_[j]; }
  const std::vector<BernsteinPiece>& pieces() const { return pieces_; }
  double lo() const { return pieces_.front().lo; }
  double hi() const { return pieces_.back().hi; }

  /// Interval of x; half-open with the last interval closed at hi().
  int locate(double x) const;

  double operator()(double x) const;
  /// One-sided value at x: Side::left uses the interval ending at x when x is
  /// an interior break-point.
  double eval(double x, Side side) const;
  /// One-sided derivative of order r.
  double derivative_at(double x, int r, Side side) const;

  PiecewisePoly derivative() const;

  /// Evaluates at sorted sample points using the batched kernels.
  std::vector<double> sample(std::span<const double> xs) const;

  double integral() const;

  /// Largest absolute Bernstein coefficient.
  double max_abs_coeff() const;

  PiecewisePoly& operator-=(const PiecewisePoly& other);
  PiecewisePoly& operator*=(double s);

 private:
  std::vector<BernsteinPiece> pieces_;
};

PiecewisePoly operator-(PiecewisePoly lhs, const PiecewisePoly& rhs);

}  // namespace mdspline
