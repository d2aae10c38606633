#include "mdspline/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdspline {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::unclamped: return "unclamped";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::singular: return "singular";
    case ErrorKind::internal: return "internal";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

ConnectionMatrix::ConnectionMatrix(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  const int n = order();
  if (n == 0) fail(ErrorKind::validation, "connection matrix must have order >= 1");
  for (int r = 0; r < n; ++r) {
    auto& row = rows_[r];
    // Accept full rows as long as the strict upper triangle is zero.
    if (static_cast<int>(row.size()) == n) {
      for (int c = r + 1; c < n; ++c) {
        if (row[c] != 0.0)
          fail(ErrorKind::validation, "connection matrix is not lower triangular");
      }
      row.resize(r + 1);
    }
    if (static_cast<int>(row.size()) != r + 1)
      fail(ErrorKind::validation, "connection matrix row " + std::to_string(r) +
                                      " has wrong length");
    for (double v : row) {
      if (!std::isfinite(v)) fail(ErrorKind::validation, "connection matrix entry not finite");
    }
    if (!(row[r] > 0.0))
      fail(ErrorKind::validation, "connection matrix diagonal must be positive");
  }
  if (rows_[0][0] != 1.0)
    fail(ErrorKind::validation, "connection matrix must have M(0,0) = 1");
  for (int r = 1; r < n; ++r) {
    if (rows_[r][0] != 0.0)
      fail(ErrorKind::validation, "connection matrix first column must be (1,0,...,0)");
  }
}

ConnectionMatrix ConnectionMatrix::identity(int order) {
  std::vector<std::vector<double>> rows(order);
  for (int r = 0; r < order; ++r) {
    rows[r].assign(r + 1, 0.0);
    rows[r][r] = 1.0;
  }
  return ConnectionMatrix(std::move(rows));
}

bool ConnectionMatrix::is_identity() const {
  for (int r = 0; r < order(); ++r)
    for (int c = 0; c <= r; ++c)
      if (rows_[r][c] != (r == c ? 1.0 : 0.0)) return false;
  return true;
}

ConnectionMatrix ConnectionMatrix::leading(int n) const {
  std::vector<std::vector<double>> rows(rows_.begin(), rows_.begin() + n);
  return ConnectionMatrix(std::move(rows));
}

int max_continuity(int dl, int dr) {
  return dl == dr ? dl - 1 : std::min(dl, dr);
}

SplineSpace validate_space(const RawSpace& raw) {
  const auto q = static_cast<int>(raw.breakpoints.size());
  if (!std::isfinite(raw.a) || !std::isfinite(raw.b) || !(raw.a < raw.b))
    fail(ErrorKind::validation, "domain must be a finite interval [a,b] with a < b");
  if (static_cast<int>(raw.degrees.size()) != q + 1)
    fail(ErrorKind::validation, "expected " + std::to_string(q + 1) + " degrees, got " +
                                    std::to_string(raw.degrees.size()));
  if (static_cast<int>(raw.continuities.size()) != q)
    fail(ErrorKind::validation, "expected " + std::to_string(q) + " continuities, got " +
                                    std::to_string(raw.continuities.size()));

  SplineSpace sp;
  sp.nodes_.reserve(q + 2);
  sp.nodes_.push_back(raw.a);
  for (double x : raw.breakpoints) sp.nodes_.push_back(x);
  sp.nodes_.push_back(raw.b);
  for (int j = 0; j + 1 < static_cast<int>(sp.nodes_.size()); ++j) {
    if (!std::isfinite(sp.nodes_[j + 1]) || !(sp.nodes_[j] < sp.nodes_[j + 1]))
      fail(ErrorKind::validation, "break-points must be strictly increasing inside (a,b) "
                                  "(violation at x_" + std::to_string(j + 1) + ")");
  }
  for (int j = 0; j <= q; ++j) {
    if (raw.degrees[j] < 1)
      fail(ErrorKind::validation, "degree d_" + std::to_string(j) + " must be >= 1");
  }
  for (int i = 1; i <= q; ++i) {
    const int k = raw.continuities[i - 1];
    const int kmax = max_continuity(raw.degrees[i - 1], raw.degrees[i]);
    if (k < 0 || k > kmax)
      fail(ErrorKind::validation, "continuity k_" + std::to_string(i) + "=" + std::to_string(k) +
                                      " at break-point x_" + std::to_string(i) +
                                      " outside [0," + std::to_string(kmax) + "]");
  }
  if (raw.connections) {
    if (static_cast<int>(raw.connections->size()) != q)
      fail(ErrorKind::validation, "expected " + std::to_string(q) + " connection matrices");
    for (int i = 1; i <= q; ++i) {
      if ((*raw.connections)[i - 1].order() != raw.continuities[i - 1] + 1)
        fail(ErrorKind::validation, "connection matrix M_" + std::to_string(i) +
                                        " must have order k_" + std::to_string(i) + "+1");
    }
  }

  sp.degrees_ = raw.degrees;
  sp.continuities_ = raw.continuities;
  sp.connections_ = raw.connections;

  int ks = 0, kt = 0;
  for (int i = 1; i <= q; ++i) {
    ks += raw.degrees[i] - raw.continuities[i - 1];
    kt += raw.degrees[i - 1] - raw.continuities[i - 1];
  }
  const int from_left = raw.degrees.front() + 1 + ks;
  const int from_right = raw.degrees.back() + 1 + kt;
  if (from_left != from_right)
    fail(ErrorKind::internal, "dimension count mismatch");
  sp.dimension_ = from_left;
  sp.max_degree_ = *std::max_element(raw.degrees.begin(), raw.degrees.end());
  return sp;
}

ConnectionMatrix SplineSpace::connection(int i) const {
  if (connections_) return (*connections_)[i - 1];
  return ConnectionMatrix::identity(continuity(i) + 1);
}

int SplineSpace::locate(double x) const {
  if (!(x >= a() && x <= b()))
    fail(ErrorKind::out_of_range, "x=" + std::to_string(x) + " outside the domain");
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const int j = static_cast<int>(it - nodes_.begin()) - 1;
  return std::min(j, q());
}

RawSpace SplineSpace::raw() const {
  RawSpace r;
  r.a = a();
  r.b = b();
  r.breakpoints.assign(nodes_.begin() + 1, nodes_.end() - 1);
  r.degrees = degrees_;
  r.continuities = continuities_;
  r.connections = connections_;
  return r;
}

ExtendedPartitions::ExtendedPartitions(std::vector<double> s, std::vector<double> t,
                                       std::vector<int> ps, std::vector<int> pt)
    : s_(std::move(s)), t_(std::move(t)), ps_(std::move(ps)), pt_(std::move(pt)) {}

int ExtendedPartitions::s_run_after(int i) const {
  int j = 0;
  while (i + j + 1 <= size() && s(i + j + 1) == s(i)) ++j;
  return j;
}

int ExtendedPartitions::t_run_before(int i) const {
  int j = 0;
  while (i - j - 1 >= 1 && t(i - j - 1) == t(i)) ++j;
  return j;
}

int ExtendedPartitions::last_s_at_or_before(double x) const {
  const auto it = std::upper_bound(s_.begin(), s_.end(), x);
  return static_cast<int>(it - s_.begin());
}

ExtendedPartitions extended_partitions(const SplineSpace& sp) {
  const int q = sp.q();
  std::vector<double> s, t;
  std::vector<int> ps, pt;
  s.reserve(sp.dimension());
  t.reserve(sp.dimension());
  s.assign(sp.degree(0) + 1, sp.a());
  ps.assign(sp.degree(0) + 1, 0);
  for (int i = 1; i <= q; ++i) {
    const int mult = sp.degree(i) - sp.continuity(i);
    s.insert(s.end(), mult, sp.x(i));
    ps.insert(ps.end(), mult, i);
  }
  for (int i = 1; i <= q; ++i) {
    const int mult = sp.degree(i - 1) - sp.continuity(i);
    t.insert(t.end(), mult, sp.x(i));
    pt.insert(pt.end(), mult, i);
  }
  t.insert(t.end(), sp.degree(q) + 1, sp.b());
  pt.insert(pt.end(), sp.degree(q) + 1, q + 1);
  if (static_cast<int>(s.size()) != sp.dimension() ||
      static_cast<int>(t.size()) != sp.dimension())
    fail(ErrorKind::internal, "extended partition length differs from dimension");
  return ExtendedPartitions(std::move(s), std::move(t), std::move(ps), std::move(pt));
}

void check_partitions(const SplineSpace& space, std::span<const double> s,
                      std::span<const double> t) {
  const int d0 = space.degree(0), dq = space.degree(space.q());
  const auto clamped_left =
      static_cast<int>(s.size()) > d0 &&
      std::all_of(s.begin(), s.begin() + d0 + 1, [&](double v) { return v == space.a(); });
  const auto clamped_right =
      static_cast<int>(t.size()) > dq &&
      std::all_of(t.end() - dq - 1, t.end(), [&](double v) { return v == space.b(); });
  if (!clamped_left || !clamped_right)
    fail(ErrorKind::unclamped, "only clamped extended partitions are supported");
  const auto expected = extended_partitions(space);
  if (!std::equal(s.begin(), s.end(), expected.s_knots().begin(), expected.s_knots().end()))
    fail(ErrorKind::validation, "left extended partition does not match the space");
  if (!std::equal(t.begin(), t.end(), expected.t_knots().begin(), expected.t_knots().end()))
    fail(ErrorKind::validation, "right extended partition does not match the space");
}

int zero_bound(const SplineSpace& space, int p, int r) {
  if (p < 0 || r > space.q() + 1 || p >= r)
    fail(ErrorKind::out_of_range, "zero_bound requires 0 <= p < r <= q+1");
  // sum_{i=p}^{r-1} (d_i+1) - sum_{i=p+1}^{r-1} (k_i+1) - 1
  int bound = space.degree(p);
  for (int i = p + 1; i <= r - 1; ++i) bound += space.degree(i) - space.continuity(i);
  return bound;
}

}  // namespace mdspline
