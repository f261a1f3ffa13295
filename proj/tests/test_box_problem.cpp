#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "blo/finite_diff.hpp"
#include "blo/problem.hpp"
#include "blo/rng.hpp"

using blo::BoxSet;
using blo::derive_constants_numerically;
using blo::make_problem;
using blo::make_synthetic_1d;
using blo::ProblemSpec;
using blo::project_box;

namespace {

Eigen::VectorXd scalar(double v) {
  Eigen::VectorXd x(1);
  x[0] = v;
  return x;
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd x(2);
  x << a, b;
  return x;
}

}  // namespace

TEST_CASE("project_box clamps componentwise") {
  const BoxSet b(vec2(-1, -1), vec2(1, 1));
  CHECK(project_box(b, vec2(0.5, -0.5)) == vec2(0.5, -0.5));
  CHECK(project_box(b, vec2(3, -3)) == vec2(1, -1));

  const BoxSet line = BoxSet::interval(0, 2);
  CHECK(project_box(line, scalar(-7))[0] == 0.0);

  CHECK_THROWS_AS(project_box(b, scalar(0)), std::invalid_argument);
}

TEST_CASE("project_box is idempotent and non-expansive") {
  const BoxSet b(vec2(-2, 0), vec2(3, 1));
  blo::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd u = vec2(rng.uniform(-10, 10), rng.uniform(-10, 10));
    const Eigen::VectorXd v = vec2(rng.uniform(-10, 10), rng.uniform(-10, 10));
    const Eigen::VectorXd pu = project_box(b, u);
    CHECK(project_box(b, pu) == pu);
    CHECK((pu - project_box(b, v)).norm() <= (u - v).norm() + 1e-15);
  }
}

TEST_CASE("box construction rejects inverted or non-finite bounds") {
  CHECK_THROWS_AS(BoxSet(scalar(1), scalar(0)), std::invalid_argument);
  CHECK_THROWS_AS(BoxSet(scalar(0), scalar(std::nan(""))), std::invalid_argument);
}

TEST_CASE("synthetic instance values") {
  const ProblemSpec p = make_synthetic_1d();

  CHECK(p.lower.eval(scalar(0), scalar(0)) == doctest::Approx(0.0));
  CHECK(p.upper.eval(scalar(0), scalar(0)) == doctest::Approx(5.0));

  // d g / d y at y = pi/10 is 10 cos(pi) + 4 pi / 10.
  const double y = std::numbers::pi / 10.0;
  const double expected = 4.0 * std::numbers::pi / 10.0 - 10.0;
  CHECK(p.lower.grad_y(scalar(0), scalar(y))[0] ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(-8.7434).epsilon(1e-4));

  // Cross-check against a central finite difference.
  const double fd = (p.lower.eval(scalar(0), scalar(y + 1e-6)) -
                     p.lower.eval(scalar(0), scalar(y - 1e-6))) /
                    2e-6;
  CHECK(p.lower.grad_y(scalar(0), scalar(y))[0] ==
        doctest::Approx(fd).epsilon(1e-7));

  CHECK(p.x_domain.lower[0] == -10);
  CHECK(p.x_domain.upper[0] == 10);
  CHECK(p.y_domain.lower[0] == -5);
  CHECK(p.y_domain.upper[0] == 5);
}

TEST_CASE("analytic gradients match finite differences at random interior points") {
  const ProblemSpec p = make_synthetic_1d();
  blo::Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::VectorXd x = scalar(rng.uniform(-9.9, 9.9));
    const Eigen::VectorXd y = scalar(rng.uniform(-4.9, 4.9));
    for (const auto* fn : {&p.upper, &p.lower}) {
      const Eigen::VectorXd gx = fn->grad_x(x, y);
      const Eigen::VectorXd gy = fn->grad_y(x, y);
      const Eigen::VectorXd fdx = blo::fd_gradient(
          [&](const Eigen::VectorXd& xx) { return fn->eval(xx, y); }, x, 1e-6);
      const Eigen::VectorXd fdy = blo::fd_gradient(
          [&](const Eigen::VectorXd& yy) { return fn->eval(x, yy); }, y, 1e-6);
      const double scale_x = std::max(1.0, gx.norm());
      const double scale_y = std::max(1.0, gy.norm());
      REQUIRE((gx - fdx).norm() / scale_x <= 1e-5);
      REQUIRE((gy - fdy).norm() / scale_y <= 1e-5);
    }
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("derived constants for the synthetic instance") {
  const ProblemSpec p = make_synthetic_1d();
  CHECK(p.constants.D == doctest::Approx(5.0));
  CHECK(p.constants.L_g >= 29.0);
  CHECK(p.constants.L_g <= 33.0);
  CHECK(p.constants.L_f > 0);
  CHECK(p.constants.Lbar_f > 0);
  CHECK(p.constants.Lbar_g > 0);
}

TEST_CASE("derived constants dominate gradient norms on a fresh grid") {
  const ProblemSpec p = make_synthetic_1d();
  for (int i = 0; i <= 500; ++i) {
    const double x = -10 + 20.0 * i / 500;
    for (int j = 0; j <= 500; ++j) {
      const double y = -5 + 10.0 * j / 500;
      Eigen::VectorXd gf(2), gg(2);
      gf << p.upper.grad_x(scalar(x), scalar(y))[0],
          p.upper.grad_y(scalar(x), scalar(y))[0];
      gg << p.lower.grad_x(scalar(x), scalar(y))[0],
          p.lower.grad_y(scalar(x), scalar(y))[0];
      REQUIRE(gf.norm() <= p.constants.L_f);
      REQUIRE(gg.norm() <= p.constants.L_g);
    }
  }
}

TEST_CASE("zero objective gets floored constants") {
  ProblemSpec p;
  auto zero = [](const Eigen::VectorXd&, const Eigen::VectorXd&) { return 0.0; };
  auto zgrad = [](const Eigen::VectorXd& a, const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(a.size()).eval();
  };
  auto zgrad_y = [](const Eigen::VectorXd&, const Eigen::VectorXd& b) {
    return Eigen::VectorXd::Zero(b.size()).eval();
  };
  p.upper = {zero, zgrad, zgrad_y};
  p.lower = {zero, zgrad, zgrad_y};
  p.x_domain = BoxSet::interval(-1, 1);
  p.y_domain = BoxSet::interval(-1, 1);
  const auto c = derive_constants_numerically(p, 11);
  CHECK(c.L_g == doctest::Approx(1e-12));
  CHECK(c.L_f == doctest::Approx(1e-12));
  CHECK(c.D == doctest::Approx(1.0));
}

TEST_CASE("derive_constants rejects bad grids and non-finite evaluations") {
  const ProblemSpec p = make_synthetic_1d();
  CHECK_THROWS_AS(derive_constants_numerically(p, 1), std::invalid_argument);

  ProblemSpec bad = p;
  bad.lower.eval = [](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return std::numeric_limits<double>::infinity();
  };
  CHECK_THROWS_AS(derive_constants_numerically(bad, 5), std::runtime_error);
}

TEST_CASE("registry") {
  CHECK_NOTHROW(make_problem("synthetic-1d"));
  CHECK_THROWS_AS(make_problem("no-such-problem"), std::invalid_argument);
  CHECK(blo::problem_names().size() == 1);
}
