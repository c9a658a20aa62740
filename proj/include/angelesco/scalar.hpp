#pragma once

// Scalar three-term recurrences for the supported weight classes, the
// matching quadrature rules, and the axis boundary data of the NNRR lattice.

#include <cstddef>
#include <vector>

#include "angelesco/system.hpp"

namespace angelesco {

// Monic orthogonal polynomials  x p_k = p_{k+1} + b[k] p_k + a[k-1] p_{k-1}.
// a[k] therefore multiplies p_k in the relation for x p_{k+1}; a[0] is the
// first coefficient with a lower neighbour.
struct ScalarRecurrence {
  std::vector<double> a;
  std::vector<double> b;
  Interval interval;
  WeightKind weight = WeightKind::chebyshev2;
};

// n coefficients of each kind: b[0..n-1], a[0..n-1].
ScalarRecurrence scalar_recurrence(WeightKind weight, const Interval& iv, std::size_t n);

// Probability-normalized rule. Gauss-type rules for the Chebyshev weights
// (exact to degree 2N-1), Clenshaw-Curtis for the uniform weight (exact to
// degree N-1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_nodes(WeightKind weight, const Interval& iv, std::size_t n);

// Smallest node count whose rule integrates polynomials of `degree` exactly.
std::size_t nodes_for_degree(WeightKind weight, std::size_t degree);

// h_k = integral of p_k (monic OPs of `src`) against the destination measure.
struct MixedRatios {
  std::vector<double> ratio;  // r_k = h_{k+1} / h_k, k = 0..m
  std::vector<double> log_h;  // log |h_k|, k = 0..m+1
};

// Requires src to hold at least m+1 coefficients. The destination interval
// must not overlap the source interval.
MixedRatios mixed_ratios(const ScalarRecurrence& src, WeightKind dst_weight,
                         const Interval& dst_iv, std::size_t m);

// Same as above with an explicit rule; the caller is responsible for its
// exactness.
MixedRatios mixed_ratios(const ScalarRecurrence& src, const QuadratureRule& dst_rule,
                         std::size_t m);

// Boundary data of the lattice along one axis, k = 0..m.
//   own_b[k]   b_k of the axis measure            (site k e_j, own direction)
//   own_a[k]   a_{k-1} of the axis measure, own_a[0] = 0
//   cross_b[k] b along the other direction at k e_j = b_k + h_{k+1}/h_k
struct AxisData {
  std::vector<double> own_b;
  std::vector<double> own_a;
  std::vector<double> cross_b;
};

AxisData axis_data(const AngelescoSystem& sys, int axis, std::size_t m);

}  // namespace angelesco
