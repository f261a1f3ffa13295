#include "blo/bench/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "blo/value_function.hpp"

namespace blo::bench {
namespace {

constexpr double kLevelSetRelax = 1e-6;

Eigen::VectorXd linspace_axis(double lo, double hi, int count) {
  if (lo == hi) {
    Eigen::VectorXd v(1);
    v[0] = lo;
    return v;
  }
  Eigen::VectorXd v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  v[count - 1] = hi;
  return v;
}

template <typename Fn>
void for_each_point(const std::vector<Eigen::VectorXd>& axes, Fn&& fn) {
  const size_t d = axes.size();
  std::vector<Eigen::Index> idx(d, 0);
  Eigen::VectorXd pt(static_cast<Eigen::Index>(d));
  while (true) {
    for (size_t i = 0; i < d; ++i) pt[static_cast<Eigen::Index>(i)] = axes[i][idx[i]];
    fn(pt);
    size_t j = 0;
    for (; j < d; ++j) {
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }
}

std::vector<Eigen::VectorXd> box_axes(const BoxSet& box, int per_dim) {
  std::vector<Eigen::VectorXd> axes;
  for (Eigen::Index i = 0; i < box.dim(); ++i)
    axes.push_back(linspace_axis(box.lower[i], box.upper[i], per_dim));
  return axes;
}

Eigen::VectorXd polish_descent(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
    const BoxSet& box, Eigen::VectorXd z, int steps) {
  double fz = f(z);
  for (int it = 0; it < steps; ++it) {
    const Eigen::VectorXd d = grad(z);
    double step = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Eigen::VectorXd cand = project_box(box, z - step * d);
      const double fc = f(cand);
      if (std::isfinite(fc) && fc < fz) {
        z = cand;
        fz = fc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return z;
}

}  // namespace

BilevelOracle make_bilevel_oracle(const ProblemSpec& p, int grid_per_dim) {
  if (p.m() > 3 || p.n() > 3)
    throw std::invalid_argument("make_bilevel_oracle: n, m <= 3 required");
  if (grid_per_dim < 101)
    throw std::invalid_argument("make_bilevel_oracle: grid_per_dim >= 101");

  const auto x_axes = box_axes(p.x_domain, grid_per_dim);
  const auto y_axes = box_axes(p.y_domain, grid_per_dim);

  // Materialize the y grid once; the x loop scans it per x.
  std::vector<Eigen::VectorXd> y_points;
  for_each_point(y_axes, [&](const Eigen::VectorXd& y) { y_points.push_back(y); });

  double best_f_star = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x, best_y;
  double best_cf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd cf_x, cf_y;
  std::vector<double> g_row(y_points.size());

  for_each_point(x_axes, [&](const Eigen::VectorXd& x) {
    double v_x = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < y_points.size(); ++i) {
      g_row[i] = p.lower.eval(x, y_points[i]);
      if (std::isfinite(g_row[i])) v_x = std::min(v_x, g_row[i]);
    }
    for (size_t i = 0; i < y_points.size(); ++i) {
      const double fv = p.upper.eval(x, y_points[i]);
      if (!std::isfinite(fv)) continue;
      if (fv < best_cf) {
        best_cf = fv;
        cf_x = x;
        cf_y = y_points[i];
      }
      if (g_row[i] <= v_x + kLevelSetRelax && fv < best_f_star) {
        best_f_star = fv;
        best_x = x;
        best_y = y_points[i];
      }
    }
  });

  if (!std::isfinite(best_f_star) || !std::isfinite(best_cf))
    throw std::runtime_error("make_bilevel_oracle: no finite grid value");

  // Polish the bilevel solution by alternating a lower-level descent on g
  // and an upper-level descent on f at fixed y.
  Eigen::VectorXd x_hat = best_x, y_hat = best_y;
  for (int round = 0; round < 2; ++round) {
    y_hat = polish_descent(
        [&](const Eigen::VectorXd& y) { return p.lower.eval(x_hat, y); },
        [&](const Eigen::VectorXd& y) { return p.lower.grad_y(x_hat, y); },
        p.y_domain, y_hat, 20);
    x_hat = polish_descent(
        [&](const Eigen::VectorXd& x) { return p.upper.eval(x, y_hat); },
        [&](const Eigen::VectorXd& x) { return p.upper.grad_x(x, y_hat); },
        p.x_domain, x_hat, 20);
  }
  y_hat = polish_descent(
      [&](const Eigen::VectorXd& y) { return p.lower.eval(x_hat, y); },
      [&](const Eigen::VectorXd& y) { return p.lower.grad_y(x_hat, y); },
      p.y_domain, y_hat, 20);

  // Joint descent polish for the f lower bound.
  {
    Eigen::VectorXd z(p.n() + p.m());
    z.head(p.n()) = cf_x;
    z.tail(p.m()) = cf_y;
    BoxSet joint(
        (Eigen::VectorXd(p.n() + p.m()) << p.x_domain.lower, p.y_domain.lower)
            .finished(),
        (Eigen::VectorXd(p.n() + p.m()) << p.x_domain.upper, p.y_domain.upper)
            .finished());
    z = polish_descent(
        [&](const Eigen::VectorXd& zz) {
          return p.upper.eval(zz.head(p.n()), zz.tail(p.m()));
        },
        [&](const Eigen::VectorXd& zz) {
          Eigen::VectorXd g(p.n() + p.m());
          g.head(p.n()) = p.upper.grad_x(zz.head(p.n()), zz.tail(p.m()));
          g.tail(p.m()) = p.upper.grad_y(zz.head(p.n()), zz.tail(p.m()));
          return g;
        },
        joint, z, 20);
    best_cf = std::min(best_cf, p.upper.eval(z.head(p.n()), z.tail(p.m())));
  }

  BilevelOracle oracle;
  oracle.f_star = p.upper.eval(x_hat, y_hat);
  oracle.c_f = best_cf - 1e-9 * (1.0 + std::abs(best_cf));
  oracle.grid_per_dim = grid_per_dim;
  return oracle;
}

OracleReport compute_metrics(const ProblemSpec& p, const IterationTrace& trace,
                             const BilevelOracle& oracle) {
  if (trace.final_x.size() == 0 || trace.final_y.size() == 0)
    throw std::invalid_argument("compute_metrics: trace has no terminal state");

  OracleReport report;
  report.f_star = oracle.f_star;
  report.c_f = oracle.c_f;
  report.v_of_x = oracle_true_value(p, trace.final_x, oracle.grid_per_dim);
  const double g_end = p.lower.eval(trace.final_x, trace.final_y);
  const double f_end = p.upper.eval(trace.final_x, trace.final_y);
  report.violation = g_end - report.v_of_x;
  report.total_gap = (f_end - oracle.f_star) + report.violation;
  return report;
}

OracleReport compute_metrics(const ProblemSpec& p, const IterationTrace& trace,
                             int grid_per_dim) {
  return compute_metrics(p, trace, make_bilevel_oracle(p, grid_per_dim));
}

}  // namespace blo::bench
