#include "blo/bench/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blo::bench {
namespace {

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::optional<double> parse_opt_double(const std::string& s, bool& ok) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  ok = res.ec == std::errc() && res.ptr == s.data() + s.size();
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const std::string& path, const IterationTrace& trace,
                     Eigen::Index n, Eigen::Index m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);

  out << "t,f_gamma,grad_map_norm,feasibility_gap";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << i;
  for (Eigen::Index i = 0; i < m; ++i) out << ",y_induced" << i;
  out << ",wallclock_ms\n";

  for (const TraceRow& row : trace.rows) {
    out << row.t << ',' << format_double(row.f_value) << ','
        << format_double(row.grad_map_norm) << ',';
    if (!std::isnan(row.feasibility_gap))
      out << format_double(row.feasibility_gap);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(row.x[i]);
    for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(row.y[i]);
    out << ',' << row.wallclock_ms << '\n';
  }
}

const char* const kSummaryHeader =
    "algorithm,gamma,alpha,eta1,eta2,lambda,k,seed,iters,violation,total_gap,"
    "status";

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open summary file: " + path);
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << r.algorithm << ',' << opt_field(r.gamma) << ',' << opt_field(r.alpha)
        << ',' << opt_field(r.eta1) << ',' << opt_field(r.eta2) << ','
        << opt_field(r.lambda) << ',' << (r.k ? std::to_string(*r.k) : "") << ','
        << r.seed << ',' << r.iters << ',' << opt_field(r.violation) << ','
        << opt_field(r.total_gap) << ',' << r.status << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open summary file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("summary file is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSummaryHeader)
    throw std::runtime_error("summary header mismatch in " + path);

  std::vector<SummaryRow> rows;
  std::ostringstream errors;
  int bad = 0;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) {
      errors << "  line " << line_no << ": expected 12 fields, got " << f.size()
             << '\n';
      ++bad;
      continue;
    }
    SummaryRow r;
    bool ok = true, field_ok = true;
    r.algorithm = f[0];
    r.gamma = parse_opt_double(f[1], field_ok);
    ok &= field_ok;
    r.alpha = parse_opt_double(f[2], field_ok);
    ok &= field_ok;
    r.eta1 = parse_opt_double(f[3], field_ok);
    ok &= field_ok;
    r.eta2 = parse_opt_double(f[4], field_ok);
    ok &= field_ok;
    r.lambda = parse_opt_double(f[5], field_ok);
    ok &= field_ok;
    if (f[6].empty()) {
      r.k = std::nullopt;
    } else {
      try {
        r.k = std::stol(f[6]);
      } catch (...) {
        ok = false;
      }
    }
    try {
      r.seed = f[7].empty() ? 0 : std::stoull(f[7]);
      r.iters = f[8].empty() ? 0 : std::stol(f[8]);
    } catch (...) {
      ok = false;
    }
    r.violation = parse_opt_double(f[9], field_ok);
    ok &= field_ok;
    r.total_gap = parse_opt_double(f[10], field_ok);
    ok &= field_ok;
    r.status = f[11];
    if (r.algorithm.empty() || r.status.empty()) ok = false;
    if (!ok) {
      errors << "  line " << line_no << ": malformed field\n";
      ++bad;
      continue;
    }
    rows.push_back(std::move(r));
  }
  if (bad > 0)
    throw std::runtime_error("malformed summary " + path + " (" +
                             std::to_string(bad) + " bad rows):\n" +
                             errors.str());
  return rows;
}

}  // namespace blo::bench
