#pragma once

#include <utility>

#include <Eigen/Core>

#include "blo/box.hpp"

namespace blo {

/// Point on the unit simplex: nonnegative weights summing to one.
struct SimplexPoint {
  Eigen::VectorXd weights;

  Eigen::Index dim() const { return weights.size(); }

  /// Throws std::invalid_argument unless weights >= -neg_tol and
  /// |sum - 1| <= sum_tol.
  void validate(double sum_tol = 1e-10, double neg_tol = 1e-12) const;
};

/// Exact Euclidean projection onto the unit simplex.
///
/// Sort-and-threshold, O(k log k): sort the entries in decreasing order,
/// find the largest j with v_(j) - (sum_{i<=j} v_(i) - 1)/j > 0, set the
/// threshold tau from that prefix and return max(v - tau, 0). Sorting ties
/// are broken by original index so the output is deterministic.
SimplexPoint project_simplex(const Eigen::VectorXd& v);

/// Projection onto the product set X x Delta. Decomposes blockwise:
/// box clamp on the x block, simplex projection on the p block.
std::pair<Eigen::VectorXd, SimplexPoint> project_product(
    const BoxSet& x_domain, const Eigen::VectorXd& v_x,
    const Eigen::VectorXd& v_p);

/// Reference projection that enumerates all 2^k - 1 nonempty support sets,
/// solves the equality-constrained least squares on each and keeps the
/// feasible candidate of least distance. Exponential in k, so k <= 6.
/// Verification use only.
SimplexPoint simplex_oracle_qp(const Eigen::VectorXd& v);

}  // namespace blo
