#include "mdspline/bernstein.hpp"

#include <string>

#include "mdspline/error.hpp"

namespace mdspline {

double de_casteljau(std::span<const double> coeffs, double u) {
  if (coeffs.empty()) return 0.0;
  // Small fixed buffer covers every degree used in practice.
  constexpr std::size_t kStack = 32;
  double stack[kStack];
  std::vector<double> heap;
  double* w = stack;
  if (coeffs.size() > kStack) {
    heap.resize(coeffs.size());
    w = heap.data();
  }
  const std::size_t n = coeffs.size();
  for (std::size_t h = 0; h < n; ++h) w[h] = coeffs[h];
  const double v = 1.0 - u;
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t h = 0; h + r < n; ++h) w[h] = v * w[h] + u * w[h + 1];
  return w[0];
}

double eval(const BernsteinPiece& piece, double x) {
  if (!(x >= piece.lo && x <= piece.hi))
    fail(ErrorKind::out_of_range, "x=" + std::to_string(x) + " outside piece interval");
  return de_casteljau(piece.coeffs, (x - piece.lo) / piece.width());
}

BernsteinPiece derivative(const BernsteinPiece& piece) {
  const int d = piece.degree();
  if (d == 0) return {piece.lo, piece.hi, {0.0}};
  const double scale = d / piece.width();
  BernsteinPiece out{piece.lo, piece.hi, std::vector<double>(d)};
  for (int h = 0; h < d; ++h) out.coeffs[h] = scale * (piece.coeffs[h + 1] - piece.coeffs[h]);
  return out;
}

BernsteinPiece antiderivative(const BernsteinPiece& piece, double lower_value) {
  const int d = piece.degree();
  const double step = piece.width() / (d + 1);
  BernsteinPiece out{piece.lo, piece.hi, std::vector<double>(d + 2)};
  out.coeffs[0] = lower_value;
  for (int h = 0; h <= d; ++h) out.coeffs[h + 1] = out.coeffs[h] + step * piece.coeffs[h];
  return out;
}

double integral(const BernsteinPiece& piece) {
  double sum = 0.0;
  for (double c : piece.coeffs) sum += c;
  return piece.width() / (piece.degree() + 1) * sum;
}

std::vector<double> endpoint_derivative_weights(int degree, double width, Side side, int r) {
  if (r < 0 || r > degree)
    fail(ErrorKind::out_of_range, "derivative order " + std::to_string(r) +
                                      " exceeds degree " + std::to_string(degree));
  // d!/(d-r)! h^-r times the r-th forward difference at the chosen end.
  double scale = 1.0;
  for (int l = 0; l < r; ++l) scale *= (degree - l) / width;
  std::vector<double> w(degree + 1, 0.0);
  const int base = side == Side::left ? 0 : degree - r;
  double binom = 1.0;  // C(r, l)
  for (int l = 0; l <= r; ++l) {
    const double sign = ((r - l) % 2 == 0) ? 1.0 : -1.0;
    w[base + l] = sign * binom * scale;
    binom = binom * (r - l) / (l + 1);
  }
  return w;
}

double endpoint_derivative(const BernsteinPiece& piece, Side side, int r) {
  const auto w = endpoint_derivative_weights(piece.degree(), piece.width(), side, r);
  double sum = 0.0;
  for (std::size_t h = 0; h < w.size(); ++h) sum += w[h] * piece.coeffs[h];
  return sum;
}

BernsteinPiece elevate_once(const BernsteinPiece& piece) {
  const int d = piece.degree();
  BernsteinPiece out{piece.lo, piece.hi, std::vector<double>(d + 2)};
  out.coeffs[0] = piece.coeffs[0];
  out.coeffs[d + 1] = piece.coeffs[d];
  for (int h = 1; h <= d; ++h) {
    const double w = static_cast<double>(h) / (d + 1);
    out.coeffs[h] = w * piece.coeffs[h - 1] + (1.0 - w) * piece.coeffs[h];
  }
  return out;
}

BernsteinPiece elevate_to(const BernsteinPiece& piece, int degree) {
  if (degree < piece.degree())
    fail(ErrorKind::precondition, "cannot elevate to a lower degree");
  BernsteinPiece out = piece;
  while (out.degree() < degree) out = elevate_once(out);
  return out;
}

}  // namespace mdspline
