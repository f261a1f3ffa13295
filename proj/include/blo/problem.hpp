#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "blo/box.hpp"

namespace blo {

/// Scalar-valued C^1 function of (x, y) with analytic partial gradients.
struct SmoothFunction {
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> eval;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>
      grad_x;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>
      grad_y;
};

/// Bounds used by step-size rules and error estimates. All strictly
/// positive; flat functions are floored at 1e-12 since these constants end
/// up in denominators.
struct SmoothnessConstants {
  double L_f = 0;     ///< sup of the full gradient norm of f
  double L_g = 0;     ///< sup of the full gradient norm of g
  double Lbar_f = 0;  ///< Lipschitz constant of the gradient of f
  double Lbar_g = 0;  ///< Lipschitz constant of the gradient of g
  double D = 0;       ///< norm radius of the lower-level domain

  void validate() const;
};

/// A bilevel problem instance: upper objective f, lower objective g, box
/// domains for both levels and the smoothness bounds. Immutable after
/// construction; all evaluations are pure.
struct ProblemSpec {
  SmoothFunction upper;  // f
  SmoothFunction lower;  // g
  BoxSet x_domain;
  BoxSet y_domain;
  SmoothnessConstants constants;

  Eigen::Index n() const { return x_domain.dim(); }
  Eigen::Index m() const { return y_domain.dim(); }
};

/// Coefficients of one member of the built-in scalar family
///   h(x, y) = xx x^2 + xy xy + yy y^2 + x_lin x + y_lin y + c
///             + amp sin(freq y + phase).
struct QuadTrigCoeffs {
  double xx = 0, xy = 0, yy = 0;
  double x_lin = 0, y_lin = 0, c = 0;
  double amp = 0, freq = 0, phase = 0;
};

/// Builds a scalar (n = m = 1) problem from quadratic-plus-trigonometric
/// coefficient sets. Smoothness constants are derived numerically.
ProblemSpec make_quad_trig(const QuadTrigCoeffs& f, const QuadTrigCoeffs& g,
                           const BoxSet& x_domain, const BoxSet& y_domain,
                           int constants_grid = 201);

/// The benchmark instance
///   f(x, y) = 3x^2 + 7xy + 5y^2 + x - y + 5 on x in [-10, 10],
///   g(x, y) = sin(10y) + 2y^2            on y in [-5, 5].
/// The lower objective has many strict local minima, only one global.
ProblemSpec make_synthetic_1d();

/// Suprema of the gradient norms and finite-difference Hessian norm
/// estimates over a uniform grid of X x Y, inflated by a 1.1 safety
/// factor. D is the largest corner norm of the y domain. Throws
/// std::runtime_error if any evaluation is non-finite.
SmoothnessConstants derive_constants_numerically(const ProblemSpec& p,
                                                 int grid_per_dim);

/// Registry lookup for built-in problems ("synthetic-1d").
ProblemSpec make_problem(const std::string& name);
std::vector<std::string> problem_names();

}  // namespace blo
