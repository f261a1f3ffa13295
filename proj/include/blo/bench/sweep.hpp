#pragma once

#include <string>

#include "blo/bench/config.hpp"
#include "blo/bench/csv.hpp"
#include "blo/bench/metrics.hpp"

namespace blo::bench {

struct SingleRunResult {
  IterationTrace trace;
  SummaryRow row;
  OracleReport report;
};

/// One seeded penalty-solver run: draws (x0, p0) from the seed, solves,
/// certifies the terminal point against the oracle.
SingleRunResult execute_divide_run(const ProblemSpec& prob, const Covering& cov,
                                   SolverConfig cfg, std::uint64_t seed,
                                   const BilevelOracle& oracle);

/// One seeded baseline run: draws (x0, y0) from the seed.
SingleRunResult execute_baseline_run(const ProblemSpec& prob,
                                     BaselineConfig cfg, std::uint64_t seed,
                                     const BilevelOracle& oracle);

/// Runs every (algorithm, parameter cell, seed) combination of the sweep,
/// writing one trace CSV per run under <out_dir>/traces plus summary.csv
/// and best_cells.csv. Per-run failures are recorded with status "failed"
/// and never abort the sweep. Runs execute on `workers` threads; the
/// summary is assembled in enumeration order by a single writer, so
/// repeated sweeps with the same configuration are byte-identical.
void run_sweep(const SweepSpec& spec, const std::string& out_dir, int workers);

}  // namespace blo::bench
