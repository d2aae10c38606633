#include "mdspline/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mdspline/error.hpp"
#include "mdspline/kernels.hpp"

namespace mdspline {

PiecewisePoly::PiecewisePoly(std::vector<BernsteinPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) fail(ErrorKind::precondition, "piecewise polynomial needs a piece");
}

PiecewisePoly PiecewisePoly::zeros(std::span<const double> nodes, std::span<const int> degrees) {
  std::vector<BernsteinPiece> pieces;
  pieces.reserve(degrees.size());
  for (std::size_t j = 0; j < degrees.size(); ++j)
    pieces.push_back(BernsteinPiece::constant(nodes[j], nodes[j + 1], degrees[j], 0.0));
  return PiecewisePoly(std::move(pieces));
}

int PiecewisePoly::locate(double x) const {
  if (!(x >= lo() && x <= hi()))
    fail(ErrorKind::out_of_range, "x=" + std::to_string(x) + " outside the domain");
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                                   [](double v, const BernsteinPiece& p) { return v < p.lo; });
  return std::min(static_cast<int>(it - pieces_.begin()) - 1, intervals() - 1);
}

double PiecewisePoly::operator()(double x) const {
  return mdspline::eval(pieces_[locate(x)], x);
}

double PiecewisePoly::eval(double x, Side side) const {
  return derivative_at(x, 0, side);
}

double PiecewisePoly::derivative_at(double x, int r, Side side) const {
  int j = locate(x);
  if (side == Side::left && j > 0 && x == pieces_[j].lo) --j;
  BernsteinPiece p = pieces_[j];
  for (int l = 0; l < r; ++l) p = mdspline::derivative(p);
  return mdspline::eval(p, x);
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<BernsteinPiece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(mdspline::derivative(p));
  return PiecewisePoly(std::move(out));
}

std::vector<double> PiecewisePoly::sample(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  std::vector<double> u;
  std::size_t start = 0;
  while (start < xs.size()) {
    const int j = locate(xs[start]);
    const auto& p = pieces_[j];
    std::size_t end = start;
    const bool last = j == intervals() - 1;
    while (end < xs.size() && (last ? xs[end] <= p.hi : xs[end] < p.hi)) ++end;
    if (end == start) ++end;  // unsorted input; fall through to a single point
    u.resize(end - start);
    for (std::size_t k = start; k < end; ++k) u[k - start] = (xs[k] - p.lo) / p.width();
    kernels::bernstein_eval(p.coeffs, u, std::span(out).subspan(start, end - start));
    start = end;
  }
  return out;
}

double PiecewisePoly::integral() const {
  double sum = 0.0;
  for (const auto& p : pieces_) sum += mdspline::integral(p);
  return sum;
}

double PiecewisePoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& p : pieces_)
    for (double c : p.coeffs) m = std::max(m, std::abs(c));
  return m;
}

PiecewisePoly& PiecewisePoly::operator-=(const PiecewisePoly& other) {
  if (other.intervals() != intervals())
    fail(ErrorKind::precondition, "piecewise difference on mismatched partitions");
  for (int j = 0; j < intervals(); ++j) {
    auto& a = pieces_[j];
    auto b = other.pieces_[j];
    const int d = std::max(a.degree(), b.degree());
    a = elevate_to(a, d);
    b = elevate_to(b, d);
    for (int h = 0; h <= d; ++h) a.coeffs[h] -= b.coeffs[h];
  }
  return *this;
}

PiecewisePoly& PiecewisePoly::operator*=(double s) {
  for (auto& p : pieces_)
    for (double& c : p.coeffs) c *= s;
  return *this;
}

PiecewisePoly operator-(PiecewisePoly lhs, const PiecewisePoly& rhs) {
  lhs -= rhs;
  return lhs;
}

}  // namespace mdspline
