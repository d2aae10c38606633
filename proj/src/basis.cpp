#include "mdspline/basis.hpp"

#include <string>

namespace mdspline {

BSplineBasis::BSplineBasis(std::shared_ptr<const SplineSpace> space,
                           std::shared_ptr<const ExtendedPartitions> parts,
                           std::vector<PiecewisePoly> fns,
                           std::shared_ptr<const TransitionSet> transitions)
    : space_(std::move(space)),
      parts_(std::move(parts)),
      fns_(std::move(fns)),
      transitions_(std::move(transitions)) {}

BSplineBasis basis_from_transitions(std::shared_ptr<const TransitionSet> ts) {
  const int K = ts->size();
  std::vector<PiecewisePoly> fns;
  fns.reserve(K);
  for (int i = 1; i <= K; ++i) {
    if (i < K)
      fns.push_back(ts->f(i).poly - ts->f(i + 1).poly);
    else
      fns.push_back(ts->f(K).poly);
  }
  auto space = ts->space_ptr();
  auto parts = ts->partitions_ptr();
  return BSplineBasis(std::move(space), std::move(parts), std::move(fns), std::move(ts));
}

BSplineBasis basis_from_transitions(const SplineSpace& space) {
  return basis_from_transitions(std::make_shared<const TransitionSet>(solve_all(space)));
}

int active_last_index(const SplineSpace& space, const ExtendedPartitions& parts, int j) {
  return parts.last_s_at_or_before(space.x(j));
}

LocalBasis eval_basis(const BSplineBasis& basis, double x) {
  const auto& space = basis.space();
  const int j = space.locate(x);
  const int d = space.degree(j);
  LocalBasis out;
  out.interval = j;
  out.first = active_last_index(space, basis.partitions(), j) - d;
  out.values.resize(d + 1);
  for (int h = 0; h <= d; ++h) out.values[h] = eval(basis.N(out.first + h).piece(j), x);
  return out;
}

std::vector<PiecewisePoly> basis_derivative(const BSplineBasis& basis, int r) {
  if (r < 1) fail(ErrorKind::precondition, "derivative order must be >= 1");
  std::vector<PiecewisePoly> out;
  out.reserve(basis.size());
  for (const auto& f : basis.functions()) {
    PiecewisePoly g = f;
    for (int l = 0; l < r; ++l) g = g.derivative();
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace mdspline
