#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blo/baselines.hpp"
#include "blo/covering.hpp"
#include "blo/problem.hpp"
#include "blo/solver.hpp"

namespace blo::bench {

/// Problem selection: a registry name, or "custom" with quad-trig
/// coefficients and interval domains.
struct ProblemConfig {
  std::string name = "synthetic-1d";
  // custom problems only
  QuadTrigCoeffs f, g;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  int constants_grid = 201;

  ProblemSpec build() const;
};

struct CoveringConfig {
  CoveringMethod method = CoveringMethod::grid;
  std::vector<int> points_per_dim;  // grid
  int k = 0;                        // random
  std::uint64_t seed = 0;           // random

  Covering build(const BoxSet& y_domain) const;
};

/// A single configured run: the penalty solver or one baseline.
struct RunConfig {
  ProblemConfig problem;
  CoveringConfig covering;
  std::variant<SolverConfig, BaselineConfig> run;
  int oracle_grid = 1001;
};

struct DivideBloGrid {
  std::vector<double> gammas, alphas, lambdas;
  std::vector<int> ks;
  double eps_stop = 1e-6;
  long max_iters = 5000;
};

struct TtsaGrid {
  std::vector<double> etas1, etas2;
  long max_iters = 5000;
};

struct VpbgdGrid {
  std::vector<double> gammas, etas1, etas2;
  long inner_iters = 10;
  long max_iters = 5000;
};

/// Seeded multi-run sweep over parameter cells. Algorithms are present when
/// their section appears in the config.
struct SweepSpec {
  ProblemConfig problem;
  int n_seeds = 1;
  std::uint64_t base_seed = 0;
  int oracle_grid = 1001;
  std::optional<DivideBloGrid> divide_blo;
  std::optional<TtsaGrid> ttsa;
  std::optional<VpbgdGrid> vpbgd;
};

/// Parses the "problem" + "covering" + "solver"|"baseline" sections of a
/// config file. Unknown keys are rejected at every level.
RunConfig parse_run_config(const std::string& json_text);

/// Parses the "problem" + "sweep" sections. Unknown keys rejected.
SweepSpec parse_sweep_config(const std::string& json_text);

std::string read_file(const std::string& path);

}  // namespace blo::bench
