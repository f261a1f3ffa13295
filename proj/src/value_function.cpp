#include "blo/value_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blo {
namespace {

// Projected gradient descent with simple backtracking, used to polish grid
// minima. Returns the improved point.
Eigen::VectorXd polish_min(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    const BoxSet& box, Eigen::VectorXd y, int steps) {
  double fy = f(y);
  for (int it = 0; it < steps; ++it) {
    const Eigen::VectorXd d = grad(y);
    double step = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Eigen::VectorXd cand = project_box(box, y - step * d);
      const double fc = f(cand);
      if (std::isfinite(fc) && fc < fy) {
        y = cand;
        fy = fc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return y;
}

}  // namespace

ValueFunctionEval eval_value_function(const ProblemSpec& p, const Covering& c,
                                      double lambda, const Eigen::VectorXd& x) {
  if (!(lambda > 0))
    throw std::invalid_argument("eval_value_function: lambda > 0 required");
  if (!p.x_domain.contains(x))
    throw std::invalid_argument("eval_value_function: x outside the domain");
  if (c.k() < 1) throw std::invalid_argument("eval_value_function: empty covering");

  const int k = c.k();
  ValueFunctionEval out;
  out.x = x;
  out.lambda = lambda;
  out.g_values.resize(k);
  for (int i = 0; i < k; ++i) {
    out.g_values[i] = p.lower.eval(x, c.points[static_cast<size_t>(i)]);
    if (!std::isfinite(out.g_values[i]))
      throw std::runtime_error("eval_value_function: non-finite g value");
  }

  out.p_star = project_simplex(-out.g_values / lambda);
  out.v_tilde = out.p_star.weights.dot(out.g_values) +
                0.5 * lambda * out.p_star.weights.squaredNorm();

  out.grad = Eigen::VectorXd::Zero(p.n());
  for (int i = 0; i < k; ++i) {
    const double w = out.p_star.weights[i];
    if (w == 0) continue;
    out.grad += w * p.lower.grad_x(x, c.points[static_cast<size_t>(i)]);
  }
  return out;
}

double oracle_true_value(const ProblemSpec& p, const Eigen::VectorXd& x,
                         int grid_per_dim) {
  if (p.m() > 3)
    throw std::invalid_argument("oracle_true_value: m <= 3 required");
  if (grid_per_dim < 101)
    throw std::invalid_argument("oracle_true_value: grid_per_dim >= 101 required");

  const Eigen::Index m = p.m();
  std::vector<Eigen::VectorXd> axes;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lo = p.y_domain.lower[i], hi = p.y_domain.upper[i];
    const int count = lo == hi ? 1 : grid_per_dim;
    Eigen::VectorXd a(count);
    for (int j = 0; j < count; ++j)
      a[j] = count == 1 ? lo : lo + (hi - lo) * j / (count - 1);
    if (count > 1) a[count - 1] = hi;
    axes.push_back(a);
  }

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_y = p.y_domain.center();
  std::vector<Eigen::Index> idx(static_cast<size_t>(m), 0);
  Eigen::VectorXd y(m);
  while (true) {
    for (Eigen::Index i = 0; i < m; ++i)
      y[i] = axes[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    const double v = p.lower.eval(x, y);
    if (std::isfinite(v) && v < best) {
      best = v;
      best_y = y;
    }
    Eigen::Index j = 0;
    for (; j < m; ++j) {
      if (++idx[static_cast<size_t>(j)] < axes[static_cast<size_t>(j)].size())
        break;
      idx[static_cast<size_t>(j)] = 0;
    }
    if (j == m) break;
  }

  const Eigen::VectorXd polished = polish_min(
      [&](const Eigen::VectorXd& yy) { return p.lower.eval(x, yy); },
      [&](const Eigen::VectorXd& yy) { return p.lower.grad_y(x, yy); },
      p.y_domain, best_y, 20);
  return std::min(best, p.lower.eval(x, polished));
}

double approximation_error_bound(const SmoothnessConstants& constants, int m,
                                 int k, double lambda) {
  if (k < 1) throw std::invalid_argument("approximation_error_bound: k >= 1");
  if (!(lambda > 0))
    throw std::invalid_argument("approximation_error_bound: lambda > 0");
  return 2.0 * constants.L_g * constants.D * std::sqrt(static_cast<double>(m)) /
             std::pow(static_cast<double>(k), 1.0 / static_cast<double>(m)) +
         0.5 * lambda;
}

double approximation_error_bound_radius(const SmoothnessConstants& constants,
                                        double r, double lambda) {
  if (!(r >= 0))
    throw std::invalid_argument("approximation_error_bound_radius: r >= 0");
  if (!(lambda > 0))
    throw std::invalid_argument("approximation_error_bound_radius: lambda > 0");
  return constants.L_g * r + 0.5 * lambda;
}

}  // namespace blo
