#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blo/solver.hpp"

namespace blo::bench {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// Trace CSV schema (exact column order):
///   t, f_gamma, grad_map_norm, feasibility_gap, x..., y_induced..., wallclock_ms
/// Baselines carry f(x, y) in the f_gamma column and leave feasibility_gap
/// blank. wallclock_ms is measured wall time and is the one column that is
/// not reproducible across repeated runs.
void write_trace_csv(const std::string& path, const IterationTrace& trace,
                     Eigen::Index n, Eigen::Index m);

/// One summary line per run.
struct SummaryRow {
  std::string algorithm;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<double> eta1;
  std::optional<double> eta2;
  std::optional<double> lambda;
  std::optional<long> k;
  std::uint64_t seed = 0;
  long iters = 0;
  std::optional<double> violation;
  std::optional<double> total_gap;
  std::string status;  // converged | max_iters | failed
};

extern const char* const kSummaryHeader;

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

/// Strict reader: throws std::runtime_error naming every malformed row.
std::vector<SummaryRow> read_summary_csv(const std::string& path);

}  // namespace blo::bench
