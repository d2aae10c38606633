#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mdspline/piecewise.hpp"
#include "mdspline/space.hpp"
#include "mdspline/transition.hpp"

namespace mdspline {

/// The B-spline basis N_1..N_K of a space. Each N_i carries one Bernstein
/// piece of degree d_j on every interval j of the domain.
class BSplineBasis {
 public:
  BSplineBasis(std::shared_ptr<const SplineSpace> space,
               std::shared_ptr<const ExtendedPartitions> parts, std::vector<PiecewisePoly> fns,
               std::shared_ptr<const TransitionSet> transitions = nullptr);

  int size() const { return static_cast<int>(fns_.size()); }
  /// 1-based.
  const PiecewisePoly& N(int i) const { return fns_[i - 1]; }
  const std::vector<PiecewisePoly>& functions() const { return fns_; }

  const SplineSpace& space() const { return *space_; }
  const ExtendedPartitions& partitions() const { return *parts_; }
  std::shared_ptr<const SplineSpace> space_ptr() const { return space_; }
  std::shared_ptr<const ExtendedPartitions> partitions_ptr() const { return parts_; }
  int max_degree() const { return space_->max_degree(); }

  /// Transition functions the basis was built from (null for the oracle).
  const TransitionSet* transitions() const { return transitions_.get(); }
  std::shared_ptr<const TransitionSet> transitions_ptr() const { return transitions_; }

  /// Support [s_i, t_i].
  std::pair<double, double> support(int i) const { return {parts_->s(i), parts_->t(i)}; }

 private:
  std::shared_ptr<const SplineSpace> space_;
  std::shared_ptr<const ExtendedPartitions> parts_;
  std::vector<PiecewisePoly> fns_;
  std::shared_ptr<const TransitionSet> transitions_;
};

/// N_i = f_i - f_{i+1} with f_{K+1} = 0.
BSplineBasis basis_from_transitions(std::shared_ptr<const TransitionSet> ts);
BSplineBasis basis_from_transitions(const SplineSpace& space);

/// One level n of the integral recurrence: N_{i,n} for i = first_index..K.
struct RecurrenceLevel {
  int n = 0;
  int first_index = 1;
  std::vector<PiecewisePoly> fns;
  std::vector<double> delta;     // 1 / integral, 0 for zero functions
  std::vector<char> is_zero;

  /// nullptr for indices outside the level (regarded as the zero function).
  const PiecewisePoly* N(int i) const {
    if (i < first_index || i >= first_index + static_cast<int>(fns.size())) return nullptr;
    return &fns[i - first_index];
  }
  int count_nonzero() const;
};

struct RecurrenceResult {
  std::vector<RecurrenceLevel> levels;  // n = 0..m
  BSplineBasis basis;
};

/// Exact piecewise-polynomial evaluation of the integral recurrence in
/// Bernstein arithmetic. Test-path construction; the production basis comes
/// from transition functions.
RecurrenceResult integral_recurrence(std::shared_ptr<const SplineSpace> space,
                                     std::shared_ptr<const ExtendedPartitions> parts);
BSplineBasis integral_recurrence_oracle(const SplineSpace& space);

/// Piecewise-linear function through (xs[k], ys[k]); used for the phi of the
/// special-case Cox-de Boor recurrence.
struct PhiFunction {
  std::vector<double> xs;
  std::vector<double> ys;
  double operator()(double x) const;
};

/// Every join of different degrees has k in {0,1}.
bool qualifies_for_algorithm1(const SplineSpace& space);

/// phi_i^{n-1} tables: result[n-1][i] for n = 1..m, i = 1..K (index 0 unused).
/// Throws ErrorKind::unsupported for non-qualifying spaces.
std::vector<std::vector<PhiFunction>> algorithm1_phis(const SplineSpace& space,
                                                      const ExtendedPartitions& parts);

/// Evaluates N_{1..K,m}(x) through the recurrence template with the linear
/// and piecewise-linear phi. Result index i-1.
class Algorithm1Basis {
 public:
  Algorithm1Basis(const SplineSpace& space, const ExtendedPartitions& parts);
  std::vector<double> operator()(double x) const;
  const std::vector<std::vector<PhiFunction>>& phis() const { return phis_; }

 private:
  SplineSpace space_;
  ExtendedPartitions parts_;
  std::vector<std::vector<PhiFunction>> phis_;
};

/// phi_i^{n-1}(x) implied by two consecutive recurrence levels. Returns
/// nullopt when the division would be by a level-(n-1) function vanishing at x.
std::optional<double> extract_phi(const RecurrenceResult& levels, int i, int n, double x);

/// Nonzero basis functions at x: N_{first..first+d_j}(x).
struct LocalBasis {
  int interval = 0;
  int first = 1;  // l - d_j
  std::vector<double> values;
  int last() const { return first + static_cast<int>(values.size()) - 1; }
};

LocalBasis eval_basis(const BSplineBasis& basis, double x);

/// Index l with s_l <= x_j < min(s_{l+1}, b) for interval j.
int active_last_index(const SplineSpace& space, const ExtendedPartitions& parts, int j);

/// r-th derivatives of every basis function.
std::vector<PiecewisePoly> basis_derivative(const BSplineBasis& basis, int r);

}  // namespace mdspline
