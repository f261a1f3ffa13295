#pragma once

#include <Eigen/Core>

#include "blo/covering.hpp"
#include "blo/problem.hpp"
#include "blo/simplex.hpp"

namespace blo {

/// One evaluation of the regularized discretized value function
///   V~(x) = min_{p in Delta} sum_i p_i g(x, y_i) + (lambda/2) ||p||^2.
struct ValueFunctionEval {
  Eigen::VectorXd x;
  Eigen::VectorXd g_values;  ///< g(x, y_i) for every covering point
  SimplexPoint p_star;       ///< unique minimizer
  double v_tilde = 0;        ///< V~(x)
  Eigen::VectorXd grad;      ///< dV~/dx = sum_i p*_i grad_x g(x, y_i)
  double lambda = 0;
};

/// Evaluates V~ by the exact projection identity: the minimizer is the
/// simplex projection of (-g(x, y_1)/lambda, ..., -g(x, y_k)/lambda).
/// No iterative inner solve is involved.
ValueFunctionEval eval_value_function(const ProblemSpec& p, const Covering& c,
                                      double lambda, const Eigen::VectorXd& x);

/// Brute-force minimum of g(x, .) over the lower-level box: uniform grid
/// scan (grid_per_dim >= 101 points per dimension, m <= 3) followed by 20
/// projected-gradient polish steps from the best grid point. Metrics and
/// test use only.
double oracle_true_value(const ProblemSpec& p, const Eigen::VectorXd& x,
                         int grid_per_dim);

/// A priori bound on |V(x) - V~(x)|: 2 L_g D sqrt(m) / k^(1/m) + lambda/2.
double approximation_error_bound(const SmoothnessConstants& constants, int m,
                                 int k, double lambda);

/// Same bound stated through the achieved covering radius: L_g r + lambda/2.
/// Tighter whenever the realized radius beats the count-based guarantee.
double approximation_error_bound_radius(const SmoothnessConstants& constants,
                                        double r, double lambda);

}  // namespace blo
