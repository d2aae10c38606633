// Cox-de Boor type evaluation for multi-degree spaces whose joins between
// different degrees are at most C^1. phi is linear on levels below m and
// piecewise linear (slope 1/d_j, normalized) on the last level.

#include <algorithm>

#include "mdspline/basis.hpp"

namespace mdspline {

double PhiFunction::operator()(double x) const {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto k = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double w = (x - xs[k]) / (xs[k + 1] - xs[k]);
  return (1.0 - w) * ys[k] + w * ys[k + 1];
}

bool qualifies_for_algorithm1(const SplineSpace& space) {
  for (int i = 1; i <= space.q(); ++i) {
    if (space.degree(i - 1) != space.degree(i) && space.continuity(i) > 1) return false;
  }
  return true;
}

namespace {

PhiFunction ramp(double lo, double hi) { return {{lo, hi}, {0.0, 1.0}}; }

}  // namespace

std::vector<std::vector<PhiFunction>> algorithm1_phis(const SplineSpace& space,
                                                      const ExtendedPartitions& parts) {
  if (!qualifies_for_algorithm1(space))
    fail(ErrorKind::unsupported,
         "Cox-de Boor special case needs C^0 or C^1 joins between different degrees");
  const int m = space.max_degree();
  const int K = parts.size();
  std::vector<std::vector<PhiFunction>> out(m, std::vector<PhiFunction>(K + 1));
  for (int n = 1; n <= m; ++n) {
    for (int i = std::max(1, m + 2 - n); i <= K; ++i) {
      const int e = i - m + n - 1;  // supp N_{i,n-1} = [s_i, t_e]
      const double lo = parts.s(i), hi = parts.t(e);
      if (!(lo < hi)) continue;  // N_{i,n-1} vanishes; phi is never used
      if (n < m) {
        out[n - 1][i] = ramp(lo, hi);
        continue;
      }
      const int first = parts.ps(i), last = parts.pt(i - 1);
      const int ni = last - first;
      bool mixed = false;
      for (int j = first + 1; j < last; ++j) mixed |= space.degree(j) != space.degree(first);
      if ((ni == 2 || ni == 3) && mixed) {
        PhiFunction phi;
        double acc = 0.0;
        phi.xs.push_back(space.x(first));
        phi.ys.push_back(0.0);
        for (int j = first; j < last; ++j) {
          acc += space.width(j) / space.degree(j);
          phi.xs.push_back(space.x(j + 1));
          phi.ys.push_back(acc);
        }
        for (double& y : phi.ys) y /= acc;
        out[n - 1][i] = std::move(phi);
      } else {
        out[n - 1][i] = ramp(lo, hi);
      }
    }
  }
  return out;
}

Algorithm1Basis::Algorithm1Basis(const SplineSpace& space, const ExtendedPartitions& parts)
    : space_(space), parts_(parts), phis_(algorithm1_phis(space, parts)) {}

std::vector<double> Algorithm1Basis::operator()(double x) const {
  const int m = space_.max_degree();
  const int K = parts_.size();
  const int j = space_.locate(x);
  std::vector<double> prev(K + 2, 0.0), cur(K + 2, 0.0);
  for (int n = 0; n <= m; ++n) {
    std::fill(cur.begin(), cur.end(), 0.0);
    const int ld = n - (m - space_.degree(j));
    for (int i = std::max(1, m + 1 - n); i <= K; ++i) {
      const int e = i - m + n;
      if (!(parts_.s(i) < parts_.t(e))) continue;
      if (!(parts_.ps(i) <= j && j < parts_.pt(e))) continue;
      if (ld < 0) continue;
      if (ld == 0) {
        cur[i] = 1.0;
        continue;
      }
      double v = 0.0;
      if (prev[i] != 0.0) v += phis_[n - 1][i](x) * prev[i];
      if (i + 1 <= K && prev[i + 1] != 0.0) v += (1.0 - phis_[n - 1][i + 1](x)) * prev[i + 1];
      cur[i] = v;
    }
    std::swap(prev, cur);
  }
  return {prev.begin() + 1, prev.begin() + 1 + K};
}

}  // namespace mdspline
