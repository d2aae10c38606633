#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mdspline/error.hpp"

namespace mdspline {

/// Lower-triangular matrix tying the left derivative vector (D^0..D^k) of a
/// spline at a break-point to its right derivative vector.
class ConnectionMatrix {
 public:
  ConnectionMatrix() = default;

  /// Row-major lower triangle: rows[r] holds entries (r,0..r). Throws
  /// ErrorKind::validation unless the matrix is lower triangular with a
  /// positive diagonal and first row/column equal to (1,0,...,0).
  explicit ConnectionMatrix(std::vector<std::vector<double>> rows);

  static ConnectionMatrix identity(int order);

  int order() const { return static_cast<int>(rows_.size()); }
  double operator()(int r, int c) const { return c <= r ? rows_[r][c] : 0.0; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  bool is_identity() const;

  /// Leading principal submatrix of the given order.
  ConnectionMatrix leading(int order) const;

  friend bool operator==(const ConnectionMatrix&, const ConnectionMatrix&) = default;

 private:
  std::vector<std::vector<double>> rows_;
};

/// Unvalidated description of S(P_d, K, Delta[, M]).
struct RawSpace {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> breakpoints;  // x_1..x_q
  std::vector<int> degrees;         // d_0..d_q
  std::vector<int> continuities;    // k_1..k_q
  std::optional<std::vector<ConnectionMatrix>> connections;  // M_1..M_q
};

/// Validated multi-degree spline space. Immutable.
///
/// Index conventions follow the usual notation: break-points x(0)=a,
/// x(1..q), x(q+1)=b; degree(j) for the interval [x_j, x_{j+1}], j=0..q;
/// continuity(i) for the interior break-point x_i, i=1..q.
class SplineSpace {
 public:
  int q() const { return static_cast<int>(degrees_.size()) - 1; }
  int intervals() const { return static_cast<int>(degrees_.size()); }
  double a() const { return nodes_.front(); }
  double b() const { return nodes_.back(); }
  double x(int j) const { return nodes_[j]; }
  int degree(int j) const { return degrees_[j]; }
  int continuity(int i) const { return continuities_[i - 1]; }
  double width(int j) const { return nodes_[j + 1] - nodes_[j]; }

  const std::vector<double>& nodes() const { return nodes_; }
  std::span<const double> breakpoints() const {
    return {nodes_.data() + 1, nodes_.size() - 2};
  }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<int>& continuities() const { return continuities_; }

  bool has_connections() const { return connections_.has_value(); }
  /// Connection matrix at x_i (identity of order k_i+1 when absent).
  ConnectionMatrix connection(int i) const;
  const std::optional<std::vector<ConnectionMatrix>>& connections() const {
    return connections_;
  }

  /// Dimension K.
  int dimension() const { return dimension_; }
  /// Maximum degree m.
  int max_degree() const { return max_degree_; }

  /// Interval j with x_j <= x < x_{j+1}; the last interval is closed at b.
  int locate(double x) const;

  RawSpace raw() const;

  friend bool operator==(const SplineSpace&, const SplineSpace&) = default;

 private:
  friend SplineSpace validate_space(const RawSpace& raw);
  SplineSpace() = default;

  std::vector<double> nodes_;
  std::vector<int> degrees_;
  std::vector<int> continuities_;
  std::optional<std::vector<ConnectionMatrix>> connections_;
  int dimension_ = 0;
  int max_degree_ = 0;
};

SplineSpace validate_space(const RawSpace& raw);

/// Admissible range of k at a join between degrees dl and dr.
int max_continuity(int dl, int dr);

/// Left and right extended partitions of a space (clamped). Knot indices are
/// 1-based, as are the break-point maps ps/pt which return indices into
/// SplineSpace::x().
class ExtendedPartitions {
 public:
  ExtendedPartitions(std::vector<double> s, std::vector<double> t,
                     std::vector<int> ps, std::vector<int> pt);

  int size() const { return static_cast<int>(s_.size()); }
  double s(int i) const { return s_[i - 1]; }
  double t(int i) const { return t_[i - 1]; }
  int ps(int i) const { return ps_[i - 1]; }
  int pt(int i) const { return pt_[i - 1]; }

  /// max{j >= 0 | s_i = s_{i+j}}
  int s_run_after(int i) const;
  /// max{j >= 0 | t_{i-j} = t_i}
  int t_run_before(int i) const;

  /// Largest l with s_l <= x.
  int last_s_at_or_before(double x) const;

  const std::vector<double>& s_knots() const { return s_; }
  const std::vector<double>& t_knots() const { return t_; }

  friend bool operator==(const ExtendedPartitions&, const ExtendedPartitions&) = default;

 private:
  std::vector<double> s_, t_;
  std::vector<int> ps_, pt_;
};

ExtendedPartitions extended_partitions(const SplineSpace& space);

/// Checks externally supplied knot sequences against the partitions implied
/// by the space. Non-clamped ends raise ErrorKind::unclamped, other mismatches
/// ErrorKind::validation.
void check_partitions(const SplineSpace& space, std::span<const double> s,
                      std::span<const double> t);

/// Upper bound on the number of zeros (with multiplicity) of a nonzero spline
/// of the space on [x_p, x_r].
int zero_bound(const SplineSpace& space, int p, int r);

}  // namespace mdspline
