#pragma once

#include <memory>
#include <vector>

#include "mdspline/piecewise.hpp"
#include "mdspline/space.hpp"

namespace mdspline {

/// Vanishing-order data k_i^s and k_i^t of knot i (can be -1 at the clamped ends).
struct EndpointOrders {
  int ks = 0;
  int kt = 0;
};

EndpointOrders endpoint_orders(const SplineSpace& space, const ExtendedPartitions& parts, int i);

/// Transition function f_i: 0 left of s_i, 1 right of t_{i-1}, stored as one
/// Bernstein piece per interval of the whole domain.
struct TransitionFunction {
  int index = 1;
  /// Nontrivial interval range [first_interval, last_interval) in break-point
  /// interval indices; empty for f_1.
  int first_interval = 0;
  int last_interval = 0;
  int k_s = -1;  // k_i^s
  int k_t = -1;  // k_{i-1}^t
  PiecewisePoly poly;
  /// 1 - f_i solved as its own system; accurate where f_i is close to 1.
  PiecewisePoly complement;
  /// Scaled residual of the Hermite system (0 when no solve was needed).
  double residual = 0.0;
  double pivot_ratio = 1.0;
  int unknowns = 0;
};

/// f_i for 2 <= i <= K by solving the endpoint/continuity Hermite system;
/// f_1 is returned as the constant one. In connection-matrix mode the interior
/// rows read M_j (D^0_- f,...,D^k_- f)^T = (D^0_+ f,...,D^k_+ f)^T.
TransitionFunction solve_transition(const SplineSpace& space, const ExtendedPartitions& parts,
                                    int i);

class TransitionSet {
 public:
  TransitionSet(std::shared_ptr<const SplineSpace> space,
                std::shared_ptr<const ExtendedPartitions> parts,
                std::vector<TransitionFunction> fns);

  int size() const { return static_cast<int>(fns_.size()); }
  /// 1-based; f(K+1) is not stored (identically zero).
  const TransitionFunction& f(int i) const { return fns_[i - 1]; }
  const SplineSpace& space() const { return *space_; }
  const ExtendedPartitions& partitions() const { return *parts_; }
  std::shared_ptr<const SplineSpace> space_ptr() const { return space_; }
  std::shared_ptr<const ExtendedPartitions> partitions_ptr() const { return parts_; }

 private:
  std::shared_ptr<const SplineSpace> space_;
  std::shared_ptr<const ExtendedPartitions> parts_;
  std::vector<TransitionFunction> fns_;
};

TransitionSet solve_all(std::shared_ptr<const SplineSpace> space,
                        std::shared_ptr<const ExtendedPartitions> parts);
TransitionSet solve_all(const SplineSpace& space);

/// D_+^{k_i^s+1} f_i(s_i) and (-1)^{k+1} D_-^{k+1} (1 - f_i)(t_{i-1}) with k = k_{i-1}^t;
/// both are positive for a correctly computed transition function.
struct TaylorSigns {
  double at_start = 0.0;
  double at_end = 0.0;
};

TaylorSigns taylor_signs(const TransitionFunction& f);

}  // namespace mdspline
