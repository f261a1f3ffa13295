#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>

#include "blo/rng.hpp"
#include "blo/simplex.hpp"

using blo::BoxSet;
using blo::project_product;
using blo::project_simplex;
using blo::simplex_oracle_qp;
using blo::SimplexPoint;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("points already on the simplex are fixed") {
  const auto p = project_simplex(vec({0.2, 0.3, 0.5}));
  CHECK(p.weights[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(p.weights[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(p.weights[2] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("symmetric input projects to the uniform point") {
  const auto p = project_simplex(vec({0, 0, 0, 0}));
  for (int i = 0; i < 4; ++i)
    CHECK(p.weights[i] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("two-dimensional projection hits the vertex") {
  // Expected value frozen from the support-enumeration oracle.
  const auto oracle = simplex_oracle_qp(vec({2, 0}));
  CHECK(oracle.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oracle.weights[1] == doctest::Approx(0.0).epsilon(1e-14));

  const auto p = project_simplex(vec({2, 0}));
  CHECK(p.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.weights[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("oracle accepts feasible input unchanged") {
  const auto p = simplex_oracle_qp(vec({0.5, 0.5}));
  CHECK(p.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("oracle equivalence on a spread-out vector") {
  const auto a = project_simplex(vec({10, 9, -10}));
  const auto b = simplex_oracle_qp(vec({10, 9, -10}));
  CHECK((a.weights - b.weights).norm() <= 1e-12);
}

TEST_CASE("oracle equivalence over 1000 random vectors, k in 1..6") {
  blo::Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + trial % 6;
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = rng.uniform(-10, 10);
    const auto fast = project_simplex(v);
    const auto slow = simplex_oracle_qp(v);
    REQUIRE((fast.weights - slow.weights).norm() <= 1e-10);
    fast.validate();
  }
}

TEST_CASE("projection is non-expansive") {
  blo::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 8;
    Eigen::VectorXd u(k), v(k);
    for (int i = 0; i < k; ++i) {
      u[i] = rng.uniform(-10, 10);
      v[i] = rng.uniform(-10, 10);
    }
    const auto pu = project_simplex(u);
    const auto pv = project_simplex(v);
    CHECK((pu.weights - pv.weights).norm() <= (u - v).norm() + 1e-12);
  }
}

TEST_CASE("projection is invariant to constant shifts") {
  blo::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 5;
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = rng.uniform(-5, 5);
    const double c = rng.uniform(-100, 100);
    const auto a = project_simplex(v);
    const auto b = project_simplex(v.array() + c);
    CHECK((a.weights - b.weights).norm() <= 1e-10);
  }
}

TEST_CASE("projection is idempotent") {
  blo::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd v(5);
    for (int i = 0; i < 5; ++i) v[i] = rng.uniform(-3, 3);
    const auto once = project_simplex(v);
    const auto twice = project_simplex(once.weights);
    CHECK((once.weights - twice.weights).norm() <= 1e-12);
  }
}

TEST_CASE("product projection decomposes blockwise") {
  const BoxSet box(vec({-1, -1}), vec({1, 1}));

  SUBCASE("interior points are fixed") {
    const auto [x, p] = project_product(box, vec({0.5, -0.5}), vec({0.6, 0.4}));
    CHECK(x == vec({0.5, -0.5}));
    CHECK(p.weights[0] == doctest::Approx(0.6).epsilon(1e-14));
  }

  SUBCASE("exterior points clamp and project") {
    const auto [x, p] = project_product(box, vec({3, -3}), vec({3, -3}));
    CHECK(x == vec({1, -1}));
    // Simplex block frozen from the support-enumeration oracle.
    const auto oracle = simplex_oracle_qp(vec({3, -3}));
    CHECK((p.weights - oracle.weights).norm() <= 1e-12);
    CHECK(p.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.weights[1] == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("k = 1 simplex is a single point") {
    const auto [x, p] = project_product(box, vec({0, 0}), vec({-42}));
    CHECK(p.weights.size() == 1);
    CHECK(p.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(project_simplex(Eigen::VectorXd()), std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(project_simplex(bad), std::invalid_argument);
  CHECK_THROWS_AS(simplex_oracle_qp(Eigen::VectorXd::Zero(7)),
                  std::invalid_argument);
  SimplexPoint p;
  p.weights = vec({0.5, 0.4});
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
