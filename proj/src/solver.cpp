#include "blo/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace blo {

void SolverConfig::validate() const {
  if (!(gamma >= 0)) throw std::invalid_argument("SolverConfig: gamma >= 0");
  if (!(lambda > 0)) throw std::invalid_argument("SolverConfig: lambda > 0");
  if (alpha && !(*alpha > 0)) throw std::invalid_argument("SolverConfig: alpha > 0");
  if (!(eps_stop > 0)) throw std::invalid_argument("SolverConfig: eps_stop > 0");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters >= 1");
}

Eigen::VectorXd induced_y(const Covering& c, const SimplexPoint& p) {
  if (p.dim() != c.k())
    throw std::invalid_argument("induced_y: weight count does not match covering");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(c.points.front().size());
  for (int i = 0; i < c.k(); ++i) {
    const double w = p.weights[i];
    if (w != 0) y += w * c.points[static_cast<size_t>(i)];
  }
  return y;
}

double f_tilde(const ProblemSpec& prob, const Covering& c,
               const Eigen::VectorXd& x, const SimplexPoint& p) {
  return prob.upper.eval(x, induced_y(c, p));
}

PenaltyGradient penalty_gradient(const ProblemSpec& prob, const Covering& c,
                                 const SolverConfig& cfg,
                                 const Eigen::VectorXd& x,
                                 const SimplexPoint& p) {
  cfg.validate();
  if (!prob.x_domain.contains(x))
    throw std::invalid_argument("penalty_gradient: x outside the domain");
  p.validate();
  if (p.dim() != c.k())
    throw std::invalid_argument("penalty_gradient: weight count mismatch");

  PenaltyGradient out;
  out.aux = eval_value_function(prob, c, cfg.lambda, x);

  const Eigen::VectorXd y_bar = induced_y(c, p);
  const Eigen::VectorXd fy = prob.upper.grad_y(x, y_bar);

  // x block: grad_x f~ + gamma (sum_i p_i grad_x g(x, y_i) - dV~/dx).
  Eigen::VectorXd gx = prob.upper.grad_x(x, y_bar);
  if (cfg.gamma != 0) {
    Eigen::VectorXd weighted_gx = Eigen::VectorXd::Zero(prob.n());
    for (int i = 0; i < c.k(); ++i) {
      const double w = p.weights[i];
      if (w != 0)
        weighted_gx += w * prob.lower.grad_x(x, c.points[static_cast<size_t>(i)]);
    }
    gx += cfg.gamma * (weighted_gx - out.aux.grad);
  }
  out.grad_x = gx;

  // p block: d f~/d p_i = grad_y f(x, y_bar)^T y_i, plus gamma g(x, y_i).
  out.grad_p.resize(c.k());
  for (int i = 0; i < c.k(); ++i)
    out.grad_p[i] = fy.dot(c.points[static_cast<size_t>(i)]) +
                    cfg.gamma * out.aux.g_values[i];
  return out;
}

double lipschitz_constant(const SmoothnessConstants& constants, int k,
                          double gamma, double lambda) {
  if (k < 1) throw std::invalid_argument("lipschitz_constant: k >= 1");
  if (!(lambda > 0)) throw std::invalid_argument("lipschitz_constant: lambda > 0");
  if (!(gamma >= 0)) throw std::invalid_argument("lipschitz_constant: gamma >= 0");
  const double kk = static_cast<double>(k);
  const double lg = constants.L_g, lbg = constants.Lbar_g;
  const double f_part =
      constants.Lbar_f * std::max(1.0, std::sqrt(kk) * constants.D * constants.D);
  const double g_part =
      std::sqrt((lbg + lg) * (lbg + lg) + kk * lg * lg) + lg * lg * kk / lambda + lbg;
  return f_part + gamma * g_part;
}

IterationTrace solve(const ProblemSpec& prob, const Covering& c,
                     const SolverConfig& cfg, const Eigen::VectorXd& x0,
                     const SimplexPoint& p0) {
  cfg.validate();
  if (!prob.x_domain.contains(x0))
    throw std::invalid_argument("solve: x0 outside the domain");
  p0.validate();
  if (p0.dim() != c.k())
    throw std::invalid_argument("solve: p0 dimension does not match covering");

  IterationTrace trace;
  trace.alpha_used =
      cfg.alpha ? *cfg.alpha
                : 1.0 / lipschitz_constant(prob.constants, c.k(), cfg.gamma,
                                           cfg.lambda);
  const double alpha = trace.alpha_used;

  if (cfg.gamma > 0 &&
      cfg.lambda > prob.constants.L_f * prob.constants.D / cfg.gamma)
    trace.warnings.push_back(
        "lambda exceeds L_f*D/gamma; the KKT feasibility bound is not applicable");

  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&start] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  Eigen::VectorXd x = x0;
  SimplexPoint p = p0;
  double last_grad_map = 0;

  for (long t = 0; t < cfg.max_iters; ++t) {
    const PenaltyGradient pg = penalty_gradient(prob, c, cfg, x, p);
    const double gap = p.weights.dot(pg.aux.g_values) - pg.aux.v_tilde;
    const double f_gamma = prob.upper.eval(x, induced_y(c, p)) + cfg.gamma * gap;
    if (!std::isfinite(f_gamma) || !pg.grad_x.allFinite() ||
        !pg.grad_p.allFinite())
      throw std::runtime_error("solve: non-finite objective or gradient at t=" +
                               std::to_string(t));

    auto [x_next, p_next] =
        project_product(prob.x_domain, x - alpha * pg.grad_x,
                        p.weights - alpha * pg.grad_p);
    const double step_norm =
        std::sqrt((x - x_next).squaredNorm() +
                  (p.weights - p_next.weights).squaredNorm());
    last_grad_map = step_norm / alpha;

    TraceRow row;
    row.t = t;
    row.f_value = f_gamma;
    row.grad_map_norm = last_grad_map;
    row.feasibility_gap = gap;
    row.x = x;
    row.y = induced_y(c, p);
    row.wallclock_ms = elapsed_ms();
    trace.rows.push_back(std::move(row));

    x = std::move(x_next);
    p = std::move(p_next);

    if (last_grad_map <= cfg.eps_stop) {
      trace.status = RunStatus::converged;
      break;
    }
  }
  if (trace.status != RunStatus::converged) trace.status = RunStatus::max_iters;

  // Final evaluation at the terminal iterate.
  const ValueFunctionEval vf = eval_value_function(prob, c, cfg.lambda, x);
  SolverState terminal;
  terminal.x = x;
  terminal.p = p;
  terminal.t = static_cast<long>(trace.rows.size());
  terminal.feasibility_gap = p.weights.dot(vf.g_values) - vf.v_tilde;
  terminal.f_gamma = prob.upper.eval(x, induced_y(c, p)) +
                     cfg.gamma * terminal.feasibility_gap;
  terminal.grad_map_norm = last_grad_map;

  trace.final_x = x;
  trace.final_y = induced_y(c, p);
  trace.final_state = std::move(terminal);
  return trace;
}

BoundCheck rate_certificate(const IterationTrace& trace, const SolverConfig& cfg,
                            double c_f, long prefix) {
  if (trace.rows.empty())
    throw std::invalid_argument("rate_certificate: empty trace");
  const long T = prefix > 0
                     ? std::min<long>(prefix, static_cast<long>(trace.rows.size()))
                     : static_cast<long>(trace.rows.size());
  const double alpha = trace.alpha_used;

  double sum_sq = 0;
  for (long t = 0; t < T; ++t) {
    const double g = trace.rows[static_cast<size_t>(t)].grad_map_norm;
    sum_sq += g * g;
  }
  BoundCheck check;
  check.lhs = sum_sq / static_cast<double>(T);
  check.rhs = 2.0 * (trace.rows.front().f_value - c_f + 0.5 * cfg.lambda) /
              (alpha * static_cast<double>(T));
  check.pass = check.lhs <= check.rhs * (1.0 + 1e-9) + 1e-12;
  check.applicable = true;
  return check;
}

BoundCheck kkt_feasibility_check(const SolverState& state,
                                 const SmoothnessConstants& constants,
                                 const SolverConfig& cfg) {
  if (!(cfg.gamma > 0))
    throw std::invalid_argument("kkt_feasibility_check: gamma > 0 required");
  BoundCheck check;
  check.lhs = state.feasibility_gap;
  check.rhs = 2.5 * constants.L_f * constants.D / cfg.gamma;
  check.applicable = cfg.lambda <= constants.L_f * constants.D / cfg.gamma;
  check.pass = check.applicable && check.lhs <= check.rhs + 1e-12;
  return check;
}

Eigen::VectorXd initial_x(const BoxSet& x_domain, Rng& rng) {
  return x_domain.sample_uniform(rng);
}

SimplexPoint initial_p(int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("initial_p: k >= 1");
  return project_simplex(rng.normal_vector(k));
}

}  // namespace blo
