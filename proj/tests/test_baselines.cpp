#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blo/baselines.hpp"
#include "blo/problem.hpp"
#include "blo/rng.hpp"
#include "blo/value_function.hpp"

using blo::BaselineAlgorithm;
using blo::BaselineConfig;
using blo::BoxSet;
using blo::make_quad_trig;
using blo::make_synthetic_1d;
using blo::ProblemSpec;
using blo::QuadTrigCoeffs;
using blo::run_ttsa;
using blo::run_vpbgd;

namespace {

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd x(1);
  x[0] = v;
  return x;
}

// Strongly convex sanity instance: g = (y - x)^2, f = x^2 + y^2 on [-2, 2].
ProblemSpec sanity_problem() {
  QuadTrigCoeffs f;
  f.xx = 1;
  f.yy = 1;
  QuadTrigCoeffs g;
  g.xx = 1;
  g.xy = -2;
  g.yy = 1;
  return make_quad_trig(f, g, BoxSet::interval(-2, 2), BoxSet::interval(-2, 2));
}

double violation_of(const ProblemSpec& p, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y) {
  return p.lower.eval(x, y) - blo::oracle_true_value(p, x, 201);
}

}  // namespace

TEST_CASE("ttsa first step uses the undecayed scale") {
  const ProblemSpec p = sanity_problem();
  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::ttsa;
  cfg.eta1 = 0.05;
  cfg.eta2 = 0.01;
  cfg.max_iters = 1;

  const Eigen::VectorXd x0 = scalar(1.0), y0 = scalar(0.5);
  const auto trace = run_ttsa(p, cfg, x0, y0);
  REQUIRE(trace.rows.size() == 1);

  // y step at t = 1: eta1 / 1^(3/5) = eta1, descending grad_y g = 2(y - x).
  const double expected_y = 0.5 - cfg.eta1 * (2.0 * (0.5 - 1.0));
  CHECK(trace.final_y[0] == doctest::Approx(expected_y).epsilon(1e-12));
}

TEST_CASE("both baselines solve the strongly convex instance") {
  const ProblemSpec p = sanity_problem();

  SUBCASE("ttsa") {
    BaselineConfig cfg;
    cfg.algorithm = BaselineAlgorithm::ttsa;
    cfg.eta1 = 0.5;
    cfg.eta2 = 0.2;
    cfg.max_iters = 20000;
    blo::Rng rng(2);
    for (int trial = 0; trial < 5; ++trial) {
      const auto trace = run_ttsa(p, cfg, p.x_domain.sample_uniform(rng),
                                  p.y_domain.sample_uniform(rng));
      REQUIRE(violation_of(p, trace.final_x, trace.final_y) <= 1e-4);
    }
  }

  SUBCASE("vpbgd") {
    BaselineConfig cfg;
    cfg.algorithm = BaselineAlgorithm::vpbgd;
    cfg.gamma = 10;
    cfg.eta1 = 0.01;
    cfg.eta2 = 0.05;
    cfg.inner_iters = 10;
    cfg.max_iters = 5000;
    blo::Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto trace = run_vpbgd(p, cfg, p.x_domain.sample_uniform(rng),
                                   p.y_domain.sample_uniform(rng));
      REQUIRE(violation_of(p, trace.final_x, trace.final_y) <= 1e-4);
    }
  }
}

TEST_CASE("ttsa converges with vanishing violation on coupled quadratics") {
  // Same structure as the sanity instance; checks the hypergradient
  // correction path (g_xy != 0, g_yy = 2 > guard).
  const ProblemSpec p = sanity_problem();
  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::ttsa;
  cfg.eta1 = 0.5;
  cfg.eta2 = 0.2;
  cfg.max_iters = 20000;
  const auto trace = run_ttsa(p, cfg, scalar(1.5), scalar(-1.0));
  CHECK(std::abs(trace.final_x[0]) <= 0.05);
  CHECK(std::abs(trace.final_y[0] - trace.final_x[0]) <= 1e-3);
}

TEST_CASE("ttsa gets trapped by a non-global lower-level minimum") {
  const ProblemSpec p = make_synthetic_1d();
  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::ttsa;
  cfg.eta1 = 0.1;
  cfg.eta2 = 0.1;
  cfg.max_iters = 3000;

  // Start the lower level inside the basin of the strict local minimum
  // near y = 0.47 (the global one sits near y = -0.15).
  const auto trace = run_ttsa(p, cfg, scalar(1.0), scalar(0.5));
  CHECK(violation_of(p, trace.final_x, trace.final_y) > 0.1);
}

TEST_CASE("vpbgd with gamma = 0 is projected descent on f alone") {
  const ProblemSpec p = sanity_problem();
  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::vpbgd;
  cfg.gamma = 0;
  cfg.eta1 = 0.05;
  cfg.eta2 = 0.05;
  cfg.inner_iters = 3;
  cfg.max_iters = 50;

  const auto trace = run_vpbgd(p, cfg, scalar(1.0), scalar(-1.0));

  // Hand-rolled projected descent on f over (x, y).
  Eigen::VectorXd x = scalar(1.0), y = scalar(-1.0);
  for (long t = 0; t < cfg.max_iters; ++t) {
    const Eigen::VectorXd xn =
        blo::project_box(p.x_domain, x - cfg.eta1 * p.upper.grad_x(x, y));
    const Eigen::VectorXd yn =
        blo::project_box(p.y_domain, y - cfg.eta1 * p.upper.grad_y(x, y));
    x = xn;
    y = yn;
  }
  CHECK(trace.final_x[0] == doctest::Approx(x[0]).epsilon(1e-12));
  CHECK(trace.final_y[0] == doctest::Approx(y[0]).epsilon(1e-12));
}

TEST_CASE("vpbgd inner loop approaches the lower-level optimum") {
  const ProblemSpec p = sanity_problem();
  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::vpbgd;
  cfg.gamma = 10;
  cfg.eta1 = 1e-9;  // freeze the outer pair; observe the surrogate only
  cfg.eta2 = 0.1;
  cfg.inner_iters = 200;
  cfg.max_iters = 1;

  const Eigen::VectorXd x0 = scalar(1.2), y0 = scalar(-1.7);
  const auto trace = run_vpbgd(p, cfg, x0, y0);
  REQUIRE(trace.rows.size() == 1);

  // Reproduce the surrogate: 200 projected steps on g(x0, .) from y0.
  Eigen::VectorXd theta = y0;
  for (int j = 0; j < 200; ++j)
    theta = blo::project_box(p.y_domain,
                             theta - cfg.eta2 * p.lower.grad_y(x0, theta));
  const double v_x = blo::oracle_true_value(p, x0, 201);
  CHECK(p.lower.eval(x0, theta) - v_x <= 1e-6);
}

TEST_CASE("baselines preserve feasibility and are deterministic") {
  const ProblemSpec p = make_synthetic_1d();

  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::vpbgd;
  cfg.gamma = 80;
  cfg.eta1 = 0.05;
  cfg.eta2 = 0.005;
  cfg.max_iters = 500;

  const auto a = run_vpbgd(p, cfg, scalar(3.0), scalar(2.0));
  const auto b = run_vpbgd(p, cfg, scalar(3.0), scalar(2.0));
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    REQUIRE(a.rows[i].x == b.rows[i].x);
    REQUIRE(a.rows[i].y == b.rows[i].y);
    REQUIRE(p.x_domain.contains(a.rows[i].x));
    REQUIRE(p.y_domain.contains(a.rows[i].y));
    REQUIRE(std::isnan(a.rows[i].feasibility_gap));
  }

  cfg.algorithm = BaselineAlgorithm::ttsa;
  cfg.gamma = 0;
  cfg.inner_iters = 1;
  cfg.eta1 = cfg.eta2 = 0.1;
  const auto t1 = run_ttsa(p, cfg, scalar(-4.0), scalar(4.0));
  const auto t2 = run_ttsa(p, cfg, scalar(-4.0), scalar(4.0));
  for (size_t i = 0; i < t1.rows.size(); ++i) {
    REQUIRE(t1.rows[i].x == t2.rows[i].x);
    REQUIRE(t1.rows[i].y == t2.rows[i].y);
    REQUIRE(p.x_domain.contains(t1.rows[i].x));
    REQUIRE(p.y_domain.contains(t1.rows[i].y));
  }
}

TEST_CASE("baseline input validation") {
  const ProblemSpec p = sanity_problem();
  BaselineConfig cfg;
  cfg.algorithm = BaselineAlgorithm::ttsa;
  CHECK_THROWS_AS(run_ttsa(p, cfg, scalar(5.0), scalar(0.0)),
                  std::invalid_argument);
  cfg.eta1 = -1;
  CHECK_THROWS_AS(run_ttsa(p, cfg, scalar(0.0), scalar(0.0)),
                  std::invalid_argument);
}
