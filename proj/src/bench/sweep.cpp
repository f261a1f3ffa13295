#include "blo/bench/sweep.hpp"

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "blo/baselines.hpp"
#include "blo/bench/report.hpp"

namespace blo::bench {
namespace {

namespace fs = std::filesystem;

std::string status_name(RunStatus s) {
  return s == RunStatus::converged ? "converged" : "max_iters";
}

SummaryRow base_row(const std::string& algorithm, std::uint64_t seed) {
  SummaryRow row;
  row.algorithm = algorithm;
  row.seed = seed;
  return row;
}

void finish_row(SummaryRow& row, const IterationTrace& trace,
                const OracleReport& report) {
  row.iters = trace.iters();
  row.status = status_name(trace.status);
  row.violation = report.violation;
  row.total_gap = report.total_gap;
}

std::string trace_file_name(const SummaryRow& row) {
  std::string name = row.algorithm;
  auto tag = [&name](const char* key, const std::optional<double>& v) {
    if (v) name += std::string("_") + key + format_double(*v);
  };
  tag("g", row.gamma);
  tag("a", row.alpha);
  tag("e1-", row.eta1);
  tag("e2-", row.eta2);
  tag("l", row.lambda);
  if (row.k) name += "_k" + std::to_string(*row.k);
  name += "_s" + std::to_string(row.seed) + ".csv";
  return name;
}

struct RunJob {
  std::function<SingleRunResult()> run;
  SummaryRow fallback;  // used when the run throws
  Eigen::Index n = 1, m = 1;
};

}  // namespace

SingleRunResult execute_divide_run(const ProblemSpec& prob, const Covering& cov,
                                   SolverConfig cfg, std::uint64_t seed,
                                   const BilevelOracle& oracle) {
  cfg.seed = seed;
  Rng rng(seed);
  const Eigen::VectorXd x0 = initial_x(prob.x_domain, rng);
  const SimplexPoint p0 = initial_p(cov.k(), rng);

  SingleRunResult result;
  result.trace = solve(prob, cov, cfg, x0, p0);
  result.report = compute_metrics(prob, result.trace, oracle);
  result.row = base_row("divide-blo", seed);
  result.row.gamma = cfg.gamma;
  result.row.alpha = result.trace.alpha_used;
  result.row.lambda = cfg.lambda;
  result.row.k = cov.k();
  finish_row(result.row, result.trace, result.report);
  return result;
}

SingleRunResult execute_baseline_run(const ProblemSpec& prob,
                                     BaselineConfig cfg, std::uint64_t seed,
                                     const BilevelOracle& oracle) {
  cfg.seed = seed;
  Rng rng(seed);
  const Eigen::VectorXd x0 = prob.x_domain.sample_uniform(rng);
  const Eigen::VectorXd y0 = prob.y_domain.sample_uniform(rng);

  SingleRunResult result;
  const bool is_ttsa = cfg.algorithm == BaselineAlgorithm::ttsa;
  result.trace = is_ttsa ? run_ttsa(prob, cfg, x0, y0)
                         : run_vpbgd(prob, cfg, x0, y0);
  result.report = compute_metrics(prob, result.trace, oracle);
  result.row = base_row(is_ttsa ? "ttsa" : "vpbgd", seed);
  if (!is_ttsa) result.row.gamma = cfg.gamma;
  result.row.eta1 = cfg.eta1;
  result.row.eta2 = cfg.eta2;
  finish_row(result.row, result.trace, result.report);
  return result;
}

void run_sweep(const SweepSpec& spec, const std::string& out_dir, int workers) {
  const ProblemSpec prob = spec.problem.build();
  const BilevelOracle oracle = make_bilevel_oracle(prob, spec.oracle_grid);

  fs::create_directories(fs::path(out_dir) / "traces");

  // Coverings are shared across cells with the same k.
  std::map<int, Covering> coverings;
  if (spec.divide_blo)
    for (int k : spec.divide_blo->ks)
      if (!coverings.count(k)) {
        std::vector<int> per_dim(static_cast<size_t>(prob.m()), k);
        if (prob.m() != 1)
          throw std::invalid_argument(
              "run_sweep: k grids assume a one-dimensional lower level");
        coverings.emplace(k, grid_covering(prob.y_domain, per_dim));
      }

  // Enumerate every run up front; order defines summary order.
  std::vector<RunJob> jobs;
  if (spec.divide_blo) {
    const DivideBloGrid& g = *spec.divide_blo;
    for (double gamma : g.gammas)
      for (double alpha : g.alphas)
        for (double lambda : g.lambdas)
          for (int k : g.ks)
            for (int s = 0; s < spec.n_seeds; ++s) {
              SolverConfig cfg;
              cfg.gamma = gamma;
              cfg.alpha = alpha;
              cfg.lambda = lambda;
              cfg.eps_stop = g.eps_stop;
              cfg.max_iters = g.max_iters;
              const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(s);
              RunJob job;
              job.n = prob.n();
              job.m = prob.m();
              job.fallback = base_row("divide-blo", seed);
              job.fallback.gamma = gamma;
              job.fallback.alpha = alpha;
              job.fallback.lambda = lambda;
              job.fallback.k = k;
              const Covering& cov = coverings.at(k);
              job.run = [&prob, &cov, cfg, seed, &oracle] {
                return execute_divide_run(prob, cov, cfg, seed, oracle);
              };
              jobs.push_back(std::move(job));
            }
  }
  if (spec.ttsa) {
    const TtsaGrid& g = *spec.ttsa;
    for (double e1 : g.etas1)
      for (double e2 : g.etas2)
        for (int s = 0; s < spec.n_seeds; ++s) {
          BaselineConfig cfg;
          cfg.algorithm = BaselineAlgorithm::ttsa;
          cfg.eta1 = e1;
          cfg.eta2 = e2;
          cfg.max_iters = g.max_iters;
          const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(s);
          RunJob job;
          job.n = prob.n();
          job.m = prob.m();
          job.fallback = base_row("ttsa", seed);
          job.fallback.eta1 = e1;
          job.fallback.eta2 = e2;
          job.run = [&prob, cfg, seed, &oracle] {
            return execute_baseline_run(prob, cfg, seed, oracle);
          };
          jobs.push_back(std::move(job));
        }
  }
  if (spec.vpbgd) {
    const VpbgdGrid& g = *spec.vpbgd;
    for (double gamma : g.gammas)
      for (double e1 : g.etas1)
        for (double e2 : g.etas2)
          for (int s = 0; s < spec.n_seeds; ++s) {
            BaselineConfig cfg;
            cfg.algorithm = BaselineAlgorithm::vpbgd;
            cfg.gamma = gamma;
            cfg.eta1 = e1;
            cfg.eta2 = e2;
            cfg.inner_iters = g.inner_iters;
            cfg.max_iters = g.max_iters;
            const std::uint64_t seed = spec.base_seed + static_cast<std::uint64_t>(s);
            RunJob job;
            job.n = prob.n();
            job.m = prob.m();
            job.fallback = base_row("vpbgd", seed);
            job.fallback.gamma = gamma;
            job.fallback.eta1 = e1;
            job.fallback.eta2 = e2;
            job.run = [&prob, cfg, seed, &oracle] {
              return execute_baseline_run(prob, cfg, seed, oracle);
            };
            jobs.push_back(std::move(job));
          }
  }

  std::vector<SummaryRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      SummaryRow row = jobs[i].fallback;
      try {
        SingleRunResult res = jobs[i].run();
        row = res.row;
        const std::string file = trace_file_name(row);
        write_trace_csv((fs::path(out_dir) / "traces" / file).string(),
                        res.trace, jobs[i].n, jobs[i].m);
      } catch (const std::exception&) {
        row.status = "failed";
      }
      rows[i] = std::move(row);
    }
  };

  const int thread_count = std::max(1, workers);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(thread_count));
  for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  write_summary_csv((fs::path(out_dir) / "summary.csv").string(), rows);

  // Best cell per algorithm by lowest mean total gap.
  const auto aggregates = aggregate_summary(rows);
  write_best_cells_csv((fs::path(out_dir) / "best_cells.csv").string(),
                       aggregates);
}

}  // namespace blo::bench
