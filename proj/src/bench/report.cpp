#include "blo/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

namespace blo::bench {
namespace {

std::string cell_key(const SummaryRow& r) {
  auto part = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("-");
  };
  return r.algorithm + "|" + part(r.gamma) + "|" + part(r.alpha) + "|" +
         part(r.eta1) + "|" + part(r.eta2) + "|" + part(r.lambda) + "|" +
         (r.k ? std::to_string(*r.k) : "-");
}

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

std::vector<AggregateRow> aggregate_summary(const std::vector<SummaryRow>& rows) {
  std::vector<AggregateRow> out;
  std::map<std::string, size_t> index;

  for (const SummaryRow& r : rows) {
    const std::string key = cell_key(r);
    auto it = index.find(key);
    if (it == index.end()) {
      AggregateRow agg;
      agg.algorithm = r.algorithm;
      agg.gamma = r.gamma;
      agg.alpha = r.alpha;
      agg.eta1 = r.eta1;
      agg.eta2 = r.eta2;
      agg.lambda = r.lambda;
      agg.k = r.k;
      index.emplace(key, out.size());
      out.push_back(agg);
      it = index.find(key);
    }
    AggregateRow& agg = out[it->second];
    agg.runs += 1;
    if (r.status == "failed" || !r.violation || !r.total_gap) {
      agg.failed += 1;
      continue;
    }
    // Accumulate; normalized below.
    agg.mean_violation += *r.violation;
    agg.max_violation = std::max(agg.max_violation, *r.violation);
    agg.mean_total_gap += *r.total_gap;
    if (*r.violation > 0.1) agg.frac_violation_over_0_1 += 1;
  }

  for (AggregateRow& agg : out) {
    const long good = agg.runs - agg.failed;
    if (good > 0) {
      agg.mean_violation /= static_cast<double>(good);
      agg.mean_total_gap /= static_cast<double>(good);
      agg.frac_violation_over_0_1 /= static_cast<double>(good);
    } else {
      agg.mean_violation = agg.max_violation = agg.mean_total_gap =
          agg.frac_violation_over_0_1 = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

static const char* const kReportHeader =
    "algorithm,gamma,alpha,eta1,eta2,lambda,k,runs,failed,mean_violation,"
    "max_violation,mean_total_gap,frac_violation_over_0.1";

void write_report_csv(const std::string& path,
                      const std::vector<AggregateRow>& aggregates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  out << kReportHeader << '\n';
  for (const AggregateRow& a : aggregates) {
    out << a.algorithm << ',' << opt_field(a.gamma) << ',' << opt_field(a.alpha)
        << ',' << opt_field(a.eta1) << ',' << opt_field(a.eta2) << ','
        << opt_field(a.lambda) << ',' << (a.k ? std::to_string(*a.k) : "")
        << ',' << a.runs << ',' << a.failed;
    if (a.runs > a.failed)
      out << ',' << format_double(a.mean_violation) << ','
          << format_double(a.max_violation) << ','
          << format_double(a.mean_total_gap) << ','
          << format_double(a.frac_violation_over_0_1);
    else
      out << ",,,,";
    out << '\n';
  }
}

void write_best_cells_csv(const std::string& path,
                          const std::vector<AggregateRow>& aggregates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open best-cells file: " + path);
  out << "algorithm,gamma,alpha,eta1,eta2,lambda,k,mean_total_gap\n";

  std::vector<std::string> algo_order;
  std::map<std::string, const AggregateRow*> best;
  for (const AggregateRow& a : aggregates) {
    if (a.runs == a.failed) continue;
    auto it = best.find(a.algorithm);
    if (it == best.end()) {
      algo_order.push_back(a.algorithm);
      best.emplace(a.algorithm, &a);
    } else if (a.mean_total_gap < it->second->mean_total_gap) {
      it->second = &a;
    }
  }
  for (const std::string& algo : algo_order) {
    const AggregateRow& a = *best.at(algo);
    out << a.algorithm << ',' << opt_field(a.gamma) << ',' << opt_field(a.alpha)
        << ',' << opt_field(a.eta1) << ',' << opt_field(a.eta2) << ','
        << opt_field(a.lambda) << ',' << (a.k ? std::to_string(*a.k) : "") << ','
        << format_double(a.mean_total_gap) << '\n';
  }
}

std::vector<AggregateRow> emit_report(const std::string& summary_path,
                                      const std::string& out_path) {
  const std::vector<SummaryRow> rows = read_summary_csv(summary_path);
  const std::vector<AggregateRow> aggregates = aggregate_summary(rows);
  write_report_csv(out_path, aggregates);
  return aggregates;
}

}  // namespace blo::bench
