#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "blo/covering.hpp"
#include "blo/problem.hpp"
#include "blo/rng.hpp"
#include "blo/simplex.hpp"
#include "blo/value_function.hpp"

namespace blo {

/// Parameters of the penalty solver. When alpha is not set the step size
/// defaults to 1/L_gamma from lipschitz_constant(); an explicit alpha is
/// accepted even above that threshold (descent is then reported in the
/// trace but not guaranteed).
struct SolverConfig {
  double gamma = 20;
  double lambda = 0.01;
  std::optional<double> alpha;  ///< empty means 1/L_gamma
  double eps_stop = 1e-6;
  long max_iters = 5000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Snapshot of the iterate (x, p) and the scalars attached to it.
struct SolverState {
  Eigen::VectorXd x;
  SimplexPoint p;
  long t = 0;
  double f_gamma = 0;          ///< penalty objective F_gamma(x, p)
  double grad_map_norm = 0;    ///< ||(z - z_next)|| / alpha
  double feasibility_gap = 0;  ///< sum_i p_i g(x, y_i) - V~(x)
};

struct TraceRow {
  long t = 0;
  double f_value = 0;          ///< F_gamma for the penalty solver, f(x, y) for baselines
  double grad_map_norm = 0;
  double feasibility_gap = 0;  ///< NaN where not defined (baselines)
  Eigen::VectorXd x;
  Eigen::VectorXd y;           ///< induced y = sum_i p_i y_i, or the raw iterate
  std::int64_t wallclock_ms = 0;
};

enum class RunStatus { converged, max_iters };

struct IterationTrace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::max_iters;
  Eigen::VectorXd final_x;
  Eigen::VectorXd final_y;
  std::optional<SolverState> final_state;  ///< penalty solver only
  double alpha_used = 0;
  std::vector<std::string> warnings;

  long iters() const { return static_cast<long>(rows.size()); }
};

/// Two sides of an inequality certificate.
struct BoundCheck {
  double lhs = 0;
  double rhs = 0;
  bool pass = false;
  bool applicable = true;
};

struct PenaltyGradient {
  Eigen::VectorXd grad_x;
  Eigen::VectorXd grad_p;
  ValueFunctionEval aux;  ///< value-function evaluation at x (p*, V~, dV~/dx)
};

/// y induced by simplex weights: sum_i p_i y_i.
Eigen::VectorXd induced_y(const Covering& c, const SimplexPoint& p);

/// f~(x, p) = f(x, sum_i p_i y_i).
double f_tilde(const ProblemSpec& prob, const Covering& c,
               const Eigen::VectorXd& x, const SimplexPoint& p);

/// Gradient of the penalty objective
///   F_gamma(x, p) = f~(x, p) + gamma (sum_i p_i g(x, y_i) - V~(x)).
/// The x block is grad_x f~ + gamma (sum_i p_i grad_x g - dV~/dx); the p
/// block has components grad_y f(x, y_bar)^T y_i + gamma g(x, y_i).
PenaltyGradient penalty_gradient(const ProblemSpec& prob, const Covering& c,
                                 const SolverConfig& cfg,
                                 const Eigen::VectorXd& x,
                                 const SimplexPoint& p);

/// Smoothness constant of F_gamma over X x Delta:
///   Lbar_f max(1, sqrt(k) D^2)
///   + gamma [ ((Lbar_g + L_g)^2 + k L_g^2)^(1/2) + L_g^2 k / lambda + Lbar_g ].
double lipschitz_constant(const SmoothnessConstants& constants, int k,
                          double gamma, double lambda);

/// Projected gradient descent on F_gamma over X x Delta. Stops when
/// ||z_t - z_{t+1}|| / alpha <= eps_stop or after max_iters steps. Throws
/// std::runtime_error if the objective or gradient turns non-finite.
IterationTrace solve(const ProblemSpec& prob, const Covering& c,
                     const SolverConfig& cfg, const Eigen::VectorXd& x0,
                     const SimplexPoint& p0);

/// Checks the averaged gradient-map bound over the first T rows
/// (T = prefix, or the whole trace when prefix == 0):
///   (1/T) sum_t ||G_t||^2 <= 2 (F_gamma(z_0) - c_f + lambda/2) / (alpha T).
/// c_f must lower-bound f~ over X x Delta.
BoundCheck rate_certificate(const IterationTrace& trace, const SolverConfig& cfg,
                            double c_f, long prefix = 0);

/// Checks the terminal feasibility gap against 5 L_f D / (2 gamma).
/// Not applicable (reported, not judged) when lambda > L_f D / gamma.
BoundCheck kkt_feasibility_check(const SolverState& state,
                                 const SmoothnessConstants& constants,
                                 const SolverConfig& cfg);

/// Uniform draw from the box.
Eigen::VectorXd initial_x(const BoxSet& x_domain, Rng& rng);

/// Projection of an i.i.d. standard normal vector onto the simplex.
SimplexPoint initial_p(int k, Rng& rng);

}  // namespace blo
