#pragma once

#include "blo/problem.hpp"
#include "blo/solver.hpp"

namespace blo::bench {

/// Brute-force certification of a terminal iterate (x_T, y_T):
///   violation = g(x_T, y_T) - min_y g(x_T, y)
///   total_gap = (f(x_T, y_T) - f*) + violation
/// with the minima taken by grid scans plus projected-gradient polish.
struct OracleReport {
  double v_of_x = 0;     ///< min_y g(x_T, y)
  double violation = 0;
  double f_star = 0;     ///< optimal value of the relaxed bilevel problem
  double total_gap = 0;
  double c_f = 0;        ///< lower bound on f~ over X x Delta
};

/// Problem-level quantities that do not depend on the run: f* from a nested
/// grid search (for each x, minimize f over the 1e-6-relaxed level set of
/// g(x, .), then polish), and the lower bound c_f on f over X x Y.
struct BilevelOracle {
  double f_star = 0;
  double c_f = 0;
  int grid_per_dim = 0;
};

BilevelOracle make_bilevel_oracle(const ProblemSpec& p, int grid_per_dim);

OracleReport compute_metrics(const ProblemSpec& p, const IterationTrace& trace,
                             const BilevelOracle& oracle);

/// Convenience overload that builds the oracle in place.
OracleReport compute_metrics(const ProblemSpec& p, const IterationTrace& trace,
                             int grid_per_dim);

}  // namespace blo::bench
