#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "blo/box.hpp"

namespace blo {

enum class CoveringMethod { grid, random };

/// Finite sample of the lower-level domain together with the covering
/// radius it claims: every point of the domain is within `radius` of some
/// member (guaranteed for grids, empirically estimated for random draws).
struct Covering {
  std::vector<Eigen::VectorXd> points;
  double radius = 0;
  CoveringMethod method = CoveringMethod::grid;
  std::uint64_t seed = 0;        ///< random method only
  Eigen::VectorXd spacing;       ///< grid method only, per-dimension step

  int k() const { return static_cast<int>(points.size()); }
};

/// Tensor grid with both endpoints included per dimension. The reported
/// radius is half the diagonal of one grid cell, which is the exact
/// covering radius of the grid. Degenerate dimensions (lower == upper)
/// collapse to a single coordinate.
Covering grid_covering(const BoxSet& y_domain,
                       const std::vector<int>& points_per_dim);

/// k i.i.d. uniform samples from the box. The radius is an empirical
/// estimate: the largest nearest-sample distance over a probe grid of
/// about 10^4 points. Deterministic given the seed.
Covering random_covering(const BoxSet& y_domain, int k, std::uint64_t seed);

/// Upper bound ceil((2 D sqrt(m) / r)^m) on the number of points needed to
/// cover a ball of radius D in dimension m with radius r.
long long covering_size_bound(double D, int m, double r);

}  // namespace blo
