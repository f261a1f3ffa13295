#include "blo/covering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "blo/rng.hpp"

namespace blo {
namespace {

std::vector<double> axis_points(double lo, double hi, int count) {
  if (lo == hi) return {lo};
  std::vector<double> pts(static_cast<size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) pts[static_cast<size_t>(i)] = lo + step * i;
  pts.back() = hi;
  return pts;
}

}  // namespace

Covering grid_covering(const BoxSet& y_domain,
                       const std::vector<int>& points_per_dim) {
  const Eigen::Index m = y_domain.dim();
  if (static_cast<Eigen::Index>(points_per_dim.size()) != m)
    throw std::invalid_argument("grid_covering: points_per_dim size mismatch");
  for (int c : points_per_dim)
    if (c < 2) throw std::invalid_argument("grid_covering: need >= 2 points per dimension");

  std::vector<std::vector<double>> axes;
  axes.reserve(static_cast<size_t>(m));
  Eigen::VectorXd spacing = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    axes.push_back(axis_points(y_domain.lower[i], y_domain.upper[i],
                               points_per_dim[static_cast<size_t>(i)]));
    if (axes.back().size() > 1)
      spacing[i] = (y_domain.upper[i] - y_domain.lower[i]) /
                   (static_cast<double>(axes.back().size()) - 1);
  }

  Covering cov;
  cov.method = CoveringMethod::grid;
  cov.spacing = spacing;
  cov.radius = 0.5 * spacing.norm();

  std::vector<size_t> idx(static_cast<size_t>(m), 0);
  while (true) {
    Eigen::VectorXd pt(m);
    for (Eigen::Index i = 0; i < m; ++i)
      pt[i] = axes[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    cov.points.push_back(pt);

    Eigen::Index j = 0;
    for (; j < m; ++j) {
      if (++idx[static_cast<size_t>(j)] < axes[static_cast<size_t>(j)].size())
        break;
      idx[static_cast<size_t>(j)] = 0;
    }
    if (j == m) break;
  }
  return cov;
}

Covering random_covering(const BoxSet& y_domain, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_covering: k >= 1");
  Covering cov;
  cov.method = CoveringMethod::random;
  cov.seed = seed;
  Rng rng(seed);
  cov.points.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) cov.points.push_back(y_domain.sample_uniform(rng));

  // Empirical radius from a probe grid of about 10^4 points.
  const Eigen::Index m = y_domain.dim();
  const int per_dim = std::max(
      2, static_cast<int>(std::ceil(std::pow(1e4, 1.0 / static_cast<double>(m)))));
  std::vector<std::vector<double>> axes;
  for (Eigen::Index i = 0; i < m; ++i)
    axes.push_back(axis_points(y_domain.lower[i], y_domain.upper[i], per_dim));

  double worst = 0;
  std::vector<size_t> idx(static_cast<size_t>(m), 0);
  Eigen::VectorXd probe(m);
  while (true) {
    for (Eigen::Index i = 0; i < m; ++i)
      probe[i] = axes[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& pt : cov.points)
      nearest = std::min(nearest, (probe - pt).norm());
    worst = std::max(worst, nearest);

    Eigen::Index j = 0;
    for (; j < m; ++j) {
      if (++idx[static_cast<size_t>(j)] < axes[static_cast<size_t>(j)].size())
        break;
      idx[static_cast<size_t>(j)] = 0;
    }
    if (j == m) break;
  }
  cov.radius = worst;
  return cov;
}

long long covering_size_bound(double D, int m, double r) {
  if (r <= 0) throw std::invalid_argument("covering_size_bound: r > 0 required");
  if (D <= 0 || m < 1)
    throw std::invalid_argument("covering_size_bound: D > 0 and m >= 1 required");
  const double base = 2.0 * D * std::sqrt(static_cast<double>(m)) / r;
  const double v = std::pow(base, static_cast<double>(m));
  if (!(v < 9.0e18))
    throw std::overflow_error("covering_size_bound: bound overflows");
  // Guard against float dust just above an exact integer.
  return static_cast<long long>(std::ceil(v - 1e-9 * std::max(1.0, v)));
}

}  // namespace blo
