#pragma once

#include <Eigen/Core>

#include "blo/rng.hpp"

namespace blo {

/// Axis-aligned box {v : lower <= v <= upper}. Convex and compact.
struct BoxSet {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  BoxSet() = default;
  BoxSet(Eigen::VectorXd lo, Eigen::VectorXd hi);

  /// One-dimensional box [lo, hi].
  static BoxSet interval(double lo, double hi);

  Eigen::Index dim() const { return lower.size(); }
  bool contains(const Eigen::VectorXd& v) const;
  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }

  /// Largest Euclidean norm attained over the box (at a vertex).
  double max_corner_norm() const;

  Eigen::VectorXd sample_uniform(Rng& rng) const;
};

/// Componentwise clamp of v onto b. Exact, idempotent and non-expansive.
Eigen::VectorXd project_box(const BoxSet& b, const Eigen::VectorXd& v);

}  // namespace blo
