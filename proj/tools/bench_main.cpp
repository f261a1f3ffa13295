// Benchmark harness for constrained bilevel solvers: single runs, seeded
// parameter sweeps and summary reports, all driven by a JSON config.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "blo/bench/config.hpp"
#include "blo/bench/csv.hpp"
#include "blo/bench/metrics.hpp"
#include "blo/bench/report.hpp"
#include "blo/bench/sweep.hpp"

namespace fs = std::filesystem;
using namespace blo;
using namespace blo::bench;

namespace {

int cmd_solve(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& out_dir) {
  RunConfig rc = parse_run_config(read_file(config_path));
  const ProblemSpec prob = rc.problem.build();
  const BilevelOracle oracle = make_bilevel_oracle(prob, rc.oracle_grid);

  fs::create_directories(out_dir);

  SingleRunResult result;
  if (std::holds_alternative<SolverConfig>(rc.run)) {
    SolverConfig cfg = std::get<SolverConfig>(rc.run);
    const Covering cov = rc.covering.build(prob.y_domain);
    result = execute_divide_run(prob, cov, cfg, seed.value_or(cfg.seed), oracle);
  } else {
    BaselineConfig cfg = std::get<BaselineConfig>(rc.run);
    result = execute_baseline_run(prob, cfg, seed.value_or(cfg.seed), oracle);
  }

  const std::string trace_path = (fs::path(out_dir) / "trace.csv").string();
  write_trace_csv(trace_path, result.trace, prob.n(), prob.m());
  write_summary_csv((fs::path(out_dir) / "run_summary.csv").string(),
                    {result.row});

  for (const std::string& w : result.trace.warnings)
    std::cerr << "warning: " << w << "\n";

  std::cout << "algorithm:  " << result.row.algorithm << "\n"
            << "status:     " << result.row.status << "\n"
            << "iterations: " << result.row.iters << "\n"
            << "violation:  " << format_double(result.report.violation) << "\n"
            << "total gap:  " << format_double(result.report.total_gap) << "\n"
            << "f*:         " << format_double(result.report.f_star) << "\n"
            << "V(x_T):     " << format_double(result.report.v_of_x) << "\n"
            << "trace:      " << trace_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int workers) {
  const SweepSpec spec = parse_sweep_config(read_file(config_path));
  run_sweep(spec, out_dir, workers);
  std::cout << "summary:    " << (fs::path(out_dir) / "summary.csv").string()
            << "\n"
            << "best cells: " << (fs::path(out_dir) / "best_cells.csv").string()
            << "\n";
  return 0;
}

int cmd_report(const std::string& summary_path, std::string out_path) {
  if (out_path.empty())
    out_path = (fs::path(summary_path).parent_path() / "report.csv").string();
  const auto aggregates = emit_report(summary_path, out_path);

  std::cout << std::left << std::setw(12) << "algorithm" << std::setw(8)
            << "runs" << std::setw(8) << "failed" << std::setw(16)
            << "mean_violation" << std::setw(15) << "max_violation"
            << std::setw(16) << "mean_total_gap" << "frac_viol>0.1\n";
  for (const auto& a : aggregates) {
    std::cout << std::left << std::setw(12) << a.algorithm << std::setw(8)
              << a.runs << std::setw(8) << a.failed;
    if (a.runs > a.failed)
      std::cout << std::setw(16) << format_double(a.mean_violation)
                << std::setw(15) << format_double(a.max_violation)
                << std::setw(16) << format_double(a.mean_total_gap)
                << format_double(a.frac_violation_over_0_1);
    else
      std::cout << "(all runs failed)";
    std::cout << "\n";
  }
  std::cout << "report: " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bilevel optimization benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", summary_path, report_out;
  std::optional<std::uint64_t> seed;
  int workers = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));

  CLI::App* solve = app.add_subcommand("solve", "run one configured solve");
  solve->add_option("--config", config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--seed", seed, "override the config seed");
  solve->add_option("--out", out_dir, "output directory (default: out)");

  CLI::App* sweep =
      app.add_subcommand("sweep", "run a seeded multi-run parameter sweep");
  sweep->add_option("--config", config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "output directory")->required();
  sweep->add_option("--workers", workers, "concurrent runs");

  CLI::App* report =
      app.add_subcommand("report", "aggregate a sweep summary CSV");
  report->add_option("--summary", summary_path, "summary.csv path")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "report CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, seed, out_dir);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, workers);
    if (report->parsed()) return cmd_report(summary_path, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
