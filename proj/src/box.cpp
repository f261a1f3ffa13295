#include "blo/box.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace blo {

BoxSet::BoxSet(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("BoxSet: bound dimensions differ");
  if (lower.size() == 0) throw std::invalid_argument("BoxSet: empty bounds");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw std::invalid_argument("BoxSet: non-finite bound");
    if (lower[i] > upper[i])
      throw std::invalid_argument("BoxSet: lower bound exceeds upper bound");
  }
}

BoxSet BoxSet::interval(double lo, double hi) {
  Eigen::VectorXd l(1), u(1);
  l[0] = lo;
  u[0] = hi;
  return BoxSet(l, u);
}

bool BoxSet::contains(const Eigen::VectorXd& v) const {
  if (v.size() != dim()) return false;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (v[i] < lower[i] || v[i] > upper[i]) return false;
  return true;
}

double BoxSet::max_corner_norm() const {
  double s = 0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double m = std::max(std::abs(lower[i]), std::abs(upper[i]));
    s += m * m;
  }
  return std::sqrt(s);
}

Eigen::VectorXd BoxSet::sample_uniform(Rng& rng) const {
  Eigen::VectorXd v(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) v[i] = rng.uniform(lower[i], upper[i]);
  return v;
}

Eigen::VectorXd project_box(const BoxSet& b, const Eigen::VectorXd& v) {
  if (v.size() != b.dim())
    throw std::invalid_argument("project_box: dimension mismatch");
  return v.cwiseMax(b.lower).cwiseMin(b.upper);
}

}  // namespace blo
