#pragma once

#include <span>
#include <vector>

namespace mdspline {

enum class Side { left, right };

/// Polynomial on [lo, hi] in the Bernstein basis of degree coeffs.size()-1.
struct BernsteinPiece {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> coeffs{0.0};

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double width() const { return hi - lo; }

  static BernsteinPiece constant(double lo, double hi, int degree, double value) {
    return {lo, hi, std::vector<double>(degree + 1, value)};
  }
};

/// de Casteljau on the local parameter u in [0,1].
double de_casteljau(std::span<const double> coeffs, double u);

/// Throws ErrorKind::out_of_range when x is outside [lo, hi].
double eval(const BernsteinPiece& piece, double x);

/// Degree d-1 derivative; a degree-0 piece maps to the zero piece of degree 0.
BernsteinPiece derivative(const BernsteinPiece& piece);

/// Degree d+1 antiderivative taking lower_value at lo.
BernsteinPiece antiderivative(const BernsteinPiece& piece, double lower_value);

/// Integral over [lo, hi].
double integral(const BernsteinPiece& piece);

/// Weights w with D^r p(end) = sum_h w[h] b_h for a degree-d piece of the
/// given width; Side::left is the start of the piece, Side::right its end.
/// Throws ErrorKind::out_of_range when r > degree.
std::vector<double> endpoint_derivative_weights(int degree, double width, Side side, int r);

double endpoint_derivative(const BernsteinPiece& piece, Side side, int r);

BernsteinPiece elevate_once(const BernsteinPiece& piece);

/// Same polynomial raised to the given degree (>= current degree).
BernsteinPiece elevate_to(const BernsteinPiece& piece, int degree);

}  // namespace mdspline
