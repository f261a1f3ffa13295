#include "blo/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace blo {

void SimplexPoint::validate(double sum_tol, double neg_tol) const {
  if (weights.size() == 0)
    throw std::invalid_argument("SimplexPoint: empty weight vector");
  double sum = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]))
      throw std::invalid_argument("SimplexPoint: non-finite weight");
    if (weights[i] < -neg_tol)
      throw std::invalid_argument("SimplexPoint: negative weight");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > sum_tol)
    throw std::invalid_argument("SimplexPoint: weights do not sum to one");
}

SimplexPoint project_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index k = v.size();
  if (k == 0) throw std::invalid_argument("project_simplex: empty vector");
  if (!v.allFinite())
    throw std::invalid_argument("project_simplex: non-finite entry");

  std::vector<Eigen::Index> order(static_cast<size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return v[a] > v[b]; });

  double prefix = 0;
  double tau = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    prefix += v[order[static_cast<size_t>(j)]];
    const double cand = (prefix - 1.0) / static_cast<double>(j + 1);
    if (v[order[static_cast<size_t>(j)]] - cand > 0) tau = cand;
  }

  SimplexPoint p;
  p.weights = (v.array() - tau).max(0.0).matrix();
  const double sum = p.weights.sum();
  if (sum > 0) p.weights /= sum;  // scrub accumulated rounding in the prefix sums
  return p;
}

std::pair<Eigen::VectorXd, SimplexPoint> project_product(
    const BoxSet& x_domain, const Eigen::VectorXd& v_x,
    const Eigen::VectorXd& v_p) {
  return {project_box(x_domain, v_x), project_simplex(v_p)};
}

SimplexPoint simplex_oracle_qp(const Eigen::VectorXd& v) {
  const Eigen::Index k = v.size();
  if (k == 0) throw std::invalid_argument("simplex_oracle_qp: empty vector");
  if (k > 6)
    throw std::invalid_argument(
        "simplex_oracle_qp: k > 6 rejected (support enumeration)");
  if (!v.allFinite())
    throw std::invalid_argument("simplex_oracle_qp: non-finite entry");

  Eigen::VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();

  // On support S the minimizer of ||p - v||^2 with sum(p) = 1 is
  // p_i = v_i + (1 - sum_S v)/|S| for i in S, zero elsewhere.
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    double sum_s = 0;
    int card = 0;
    for (Eigen::Index i = 0; i < k; ++i)
      if (mask & (1u << i)) {
        sum_s += v[i];
        ++card;
      }
    const double shift = (1.0 - sum_s) / card;

    Eigen::VectorXd cand = Eigen::VectorXd::Zero(k);
    bool feasible = true;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        cand[i] = v[i] + shift;
        if (cand[i] < -1e-12) {
          feasible = false;
          break;
        }
      }
    }
    if (!feasible) continue;
    const double dist = (cand - v).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = cand;
    }
  }

  SimplexPoint p;
  p.weights = best.array().max(0.0).matrix();
  return p;
}

}  // namespace blo
