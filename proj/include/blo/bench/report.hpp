#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blo/bench/csv.hpp"

namespace blo::bench {

/// Per-(algorithm, parameter cell) aggregate of a sweep summary.
struct AggregateRow {
  std::string algorithm;
  std::optional<double> gamma, alpha, eta1, eta2, lambda;
  std::optional<long> k;
  long runs = 0;    ///< rows in the cell, failed included
  long failed = 0;
  double mean_violation = 0;
  double max_violation = 0;
  double mean_total_gap = 0;
  double frac_violation_over_0_1 = 0;  ///< fraction of successful runs
};

/// Groups summary rows by algorithm and cell parameters, in first-appearance
/// order. Statistics cover successful runs; failures are counted.
std::vector<AggregateRow> aggregate_summary(const std::vector<SummaryRow>& rows);

void write_report_csv(const std::string& path,
                      const std::vector<AggregateRow>& aggregates);

/// Lowest-mean-total-gap cell per algorithm (cells without a successful run
/// are skipped).
void write_best_cells_csv(const std::string& path,
                          const std::vector<AggregateRow>& aggregates);

/// Reads a summary CSV and writes the aggregate table. Returns the
/// aggregates for display.
std::vector<AggregateRow> emit_report(const std::string& summary_path,
                                      const std::string& out_path);

}  // namespace blo::bench
