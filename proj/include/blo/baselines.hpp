#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "blo/problem.hpp"
#include "blo/solver.hpp"

namespace blo {

enum class BaselineAlgorithm { ttsa, vpbgd };

/// Parameters of the comparison algorithms. eta1/eta2 are step-size scales:
/// for TTSA they feed the decaying schedules eta1/t^(3/5) (lower level) and
/// eta2/t^(2/5) (upper level); for V-PBGD they are the constant outer and
/// inner step sizes. gamma and inner_iters apply to V-PBGD only.
struct BaselineConfig {
  BaselineAlgorithm algorithm = BaselineAlgorithm::ttsa;
  double eta1 = 0.1;
  double eta2 = 0.1;
  double gamma = 0;      ///< vpbgd penalty coefficient
  long inner_iters = 10; ///< vpbgd inner loop length
  long max_iters = 5000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Two-timescale iteration: a projected gradient step on g in y with step
/// eta1/t^(3/5), then a projected hypergradient step on x with step
/// eta2/t^(2/5). The hypergradient is grad_x f - (d2g/dxdy) (d2g/dydy)^-1
/// grad_y f with both second-derivative blocks estimated by central
/// differences; the correction is dropped when the y-Hessian estimate is
/// near-singular (smallest singular value <= 1e-6), which keeps iterates
/// finite on non-convex g. Runs for max_iters.
IterationTrace run_ttsa(const ProblemSpec& prob, const BaselineConfig& cfg,
                        const Eigen::VectorXd& x0, const Eigen::VectorXd& y0);

/// Penalty iteration with an inner value-function surrogate: each outer
/// step first runs inner_iters projected gradient steps on g(x, .) from the
/// warm-started surrogate theta, then takes one projected gradient step on
/// f(x, y) + gamma (g(x, y) - g(x, theta)) over (x, y) with step eta1
/// (theta held fixed). The inner steps use eta2. Runs for max_iters.
IterationTrace run_vpbgd(const ProblemSpec& prob, const BaselineConfig& cfg,
                         const Eigen::VectorXd& x0, const Eigen::VectorXd& y0);

}  // namespace blo
