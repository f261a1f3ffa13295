#include "blo/baselines.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "blo/finite_diff.hpp"

namespace blo {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kSingularGuard = 1e-6;
constexpr double kFdStep = 1e-5;

void check_start(const ProblemSpec& prob, const Eigen::VectorXd& x0,
                 const Eigen::VectorXd& y0) {
  if (!prob.x_domain.contains(x0))
    throw std::invalid_argument("baseline: x0 outside the domain");
  if (!prob.y_domain.contains(y0))
    throw std::invalid_argument("baseline: y0 outside the domain");
}

std::int64_t ms_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Hypergradient estimate grad_x f - Jxy^T Hyy^-1 grad_y f with the second
// derivative blocks taken by central differences. The probes may step a
// hair outside the box; quad-trig objectives are defined there. Returns
// grad_x f alone when Hyy is near-singular or the correction is non-finite.
Eigen::VectorXd ttsa_hypergradient(const ProblemSpec& prob,
                                   const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) {
  const Eigen::VectorXd fx = prob.upper.grad_x(x, y);
  const Eigen::VectorXd fy = prob.upper.grad_y(x, y);

  const Eigen::MatrixXd hyy = fd_jacobian(
      [&](const Eigen::VectorXd& yy) { return prob.lower.grad_y(x, yy); }, y,
      kFdStep);
  const Eigen::MatrixXd jxy = fd_jacobian(
      [&](const Eigen::VectorXd& xx) { return prob.lower.grad_y(xx, y); }, x,
      kFdStep);  // m x n, column a = d grad_y / d x_a

  if (!hyy.allFinite() || !jxy.allFinite()) return fx;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(hyy, Eigen::ComputeThinU |
                                                       Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() <= kSingularGuard) return fx;

  const Eigen::VectorXd w = svd.solve(fy);
  const Eigen::VectorXd correction = jxy.transpose() * w;
  if (!correction.allFinite()) return fx;
  return fx - correction;
}

}  // namespace

void BaselineConfig::validate() const {
  if (!(eta1 > 0 && eta2 > 0))
    throw std::invalid_argument("BaselineConfig: step scales must be positive");
  if (algorithm == BaselineAlgorithm::vpbgd) {
    if (!(gamma >= 0)) throw std::invalid_argument("BaselineConfig: gamma >= 0");
    if (inner_iters < 1)
      throw std::invalid_argument("BaselineConfig: inner_iters >= 1");
  }
  if (max_iters < 1) throw std::invalid_argument("BaselineConfig: max_iters >= 1");
}

IterationTrace run_ttsa(const ProblemSpec& prob, const BaselineConfig& cfg,
                        const Eigen::VectorXd& x0, const Eigen::VectorXd& y0) {
  cfg.validate();
  check_start(prob, x0, y0);

  IterationTrace trace;
  const auto start = std::chrono::steady_clock::now();
  Eigen::VectorXd x = x0, y = y0;

  for (long t = 0; t < cfg.max_iters; ++t) {
    const double s = static_cast<double>(t + 1);  // schedules count from 1
    const double a1 = cfg.eta1 / std::pow(s, 0.6);
    const double a2 = cfg.eta2 / std::pow(s, 0.4);

    const double f_val = prob.upper.eval(x, y);

    const Eigen::VectorXd y_next =
        project_box(prob.y_domain, y - a1 * prob.lower.grad_y(x, y));
    const Eigen::VectorXd h = ttsa_hypergradient(prob, x, y_next);
    const Eigen::VectorXd x_next = project_box(prob.x_domain, x - a2 * h);

    if (!std::isfinite(f_val) || !x_next.allFinite() || !y_next.allFinite())
      throw std::runtime_error("run_ttsa: non-finite iterate at t=" +
                               std::to_string(t));

    TraceRow row;
    row.t = t;
    row.f_value = f_val;
    row.grad_map_norm = std::sqrt(((y - y_next) / a1).squaredNorm() +
                                  ((x - x_next) / a2).squaredNorm());
    row.feasibility_gap = kNan;
    row.x = x;
    row.y = y;
    row.wallclock_ms = ms_since(start);
    trace.rows.push_back(std::move(row));

    x = x_next;
    y = y_next;
  }

  trace.status = RunStatus::max_iters;
  trace.final_x = x;
  trace.final_y = y;
  return trace;
}

IterationTrace run_vpbgd(const ProblemSpec& prob, const BaselineConfig& cfg,
                         const Eigen::VectorXd& x0, const Eigen::VectorXd& y0) {
  cfg.validate();
  check_start(prob, x0, y0);

  IterationTrace trace;
  const auto start = std::chrono::steady_clock::now();
  Eigen::VectorXd x = x0, y = y0, theta = y0;

  for (long t = 0; t < cfg.max_iters; ++t) {
    for (long j = 0; j < cfg.inner_iters; ++j)
      theta = project_box(prob.y_domain,
                          theta - cfg.eta2 * prob.lower.grad_y(x, theta));

    const double f_val = prob.upper.eval(x, y);
    const Eigen::VectorXd gx =
        prob.upper.grad_x(x, y) +
        cfg.gamma * (prob.lower.grad_x(x, y) - prob.lower.grad_x(x, theta));
    const Eigen::VectorXd gy =
        prob.upper.grad_y(x, y) + cfg.gamma * prob.lower.grad_y(x, y);

    const Eigen::VectorXd x_next = project_box(prob.x_domain, x - cfg.eta1 * gx);
    const Eigen::VectorXd y_next = project_box(prob.y_domain, y - cfg.eta1 * gy);

    if (!std::isfinite(f_val) || !x_next.allFinite() || !y_next.allFinite() ||
        !theta.allFinite())
      throw std::runtime_error("run_vpbgd: non-finite iterate at t=" +
                               std::to_string(t));

    TraceRow row;
    row.t = t;
    row.f_value = f_val;
    row.grad_map_norm =
        std::sqrt((x - x_next).squaredNorm() + (y - y_next).squaredNorm()) /
        cfg.eta1;
    row.feasibility_gap = kNan;
    row.x = x;
    row.y = y;
    row.wallclock_ms = ms_since(start);
    trace.rows.push_back(std::move(row));

    x = x_next;
    y = y_next;
  }

  trace.status = RunStatus::max_iters;
  trace.final_x = x;
  trace.final_y = y;
  return trace;
}

}  // namespace blo
