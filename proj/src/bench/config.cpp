#include "blo/bench/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace blo::bench {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw std::invalid_argument("config: " + context + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!obj.is_object()) fail(context, "expected an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) fail(context, "unknown key '" + item.key() + "'");
}

double get_num(const json& obj, const char* key, double fallback,
               const std::string& context) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(context, std::string(key) + " must be a number");
  return obj[key].get<double>();
}

long get_int(const json& obj, const char* key, long fallback,
             const std::string& context) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    fail(context, std::string(key) + " must be an integer");
  return obj[key].get<long>();
}

std::vector<double> get_num_list(const json& obj, const char* key,
                                 const std::string& context) {
  if (!obj.contains(key)) fail(context, std::string("missing '") + key + "'");
  if (!obj[key].is_array() || obj[key].empty())
    fail(context, std::string(key) + " must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) fail(context, std::string(key) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

QuadTrigCoeffs parse_coeffs(const json& obj, const std::string& context) {
  check_keys(obj, {"xx", "xy", "yy", "x", "y", "const", "amp", "freq", "phase"},
             context);
  QuadTrigCoeffs c;
  c.xx = get_num(obj, "xx", 0, context);
  c.xy = get_num(obj, "xy", 0, context);
  c.yy = get_num(obj, "yy", 0, context);
  c.x_lin = get_num(obj, "x", 0, context);
  c.y_lin = get_num(obj, "y", 0, context);
  c.c = get_num(obj, "const", 0, context);
  c.amp = get_num(obj, "amp", 0, context);
  c.freq = get_num(obj, "freq", 0, context);
  c.phase = get_num(obj, "phase", 0, context);
  return c;
}

std::pair<double, double> parse_interval(const json& obj, const char* key,
                                         const std::string& context) {
  if (!obj.contains(key)) fail(context, std::string("missing '") + key + "'");
  const auto& v = obj[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(context, std::string(key) + " must be [lo, hi]");
  return {v[0].get<double>(), v[1].get<double>()};
}

ProblemConfig parse_problem(const json& obj) {
  const std::string ctx = "problem";
  ProblemConfig pc;
  check_keys(obj,
             {"name", "x_domain", "y_domain", "f", "g", "constants_grid"}, ctx);
  if (!obj.contains("name") || !obj["name"].is_string())
    fail(ctx, "missing string 'name'");
  pc.name = obj["name"].get<std::string>();
  if (pc.name == "custom") {
    std::tie(pc.x_lo, pc.x_hi) = parse_interval(obj, "x_domain", ctx);
    std::tie(pc.y_lo, pc.y_hi) = parse_interval(obj, "y_domain", ctx);
    if (!obj.contains("f") || !obj.contains("g"))
      fail(ctx, "custom problems need 'f' and 'g' coefficient objects");
    pc.f = parse_coeffs(obj["f"], ctx + ".f");
    pc.g = parse_coeffs(obj["g"], ctx + ".g");
    pc.constants_grid =
        static_cast<int>(get_int(obj, "constants_grid", 201, ctx));
  } else {
    for (const char* key : {"x_domain", "y_domain", "f", "g", "constants_grid"})
      if (obj.contains(key))
        fail(ctx, std::string("'") + key + "' is only valid for custom problems");
  }
  return pc;
}

CoveringConfig parse_covering(const json& obj) {
  const std::string ctx = "covering";
  check_keys(obj, {"method", "points_per_dim", "k", "seed"}, ctx);
  if (!obj.contains("method") || !obj["method"].is_string())
    fail(ctx, "missing string 'method'");
  CoveringConfig cc;
  const std::string method = obj["method"].get<std::string>();
  if (method == "grid") {
    cc.method = CoveringMethod::grid;
    if (!obj.contains("points_per_dim") || !obj["points_per_dim"].is_array())
      fail(ctx, "grid coverings need 'points_per_dim'");
    for (const auto& v : obj["points_per_dim"]) {
      if (!v.is_number_integer())
        fail(ctx, "points_per_dim entries must be integers");
      cc.points_per_dim.push_back(v.get<int>());
    }
    if (obj.contains("k") || obj.contains("seed"))
      fail(ctx, "'k'/'seed' are only valid for random coverings");
  } else if (method == "random") {
    cc.method = CoveringMethod::random;
    cc.k = static_cast<int>(get_int(obj, "k", 0, ctx));
    if (cc.k < 1) fail(ctx, "random coverings need 'k' >= 1");
    cc.seed = static_cast<std::uint64_t>(get_int(obj, "seed", 0, ctx));
    if (obj.contains("points_per_dim"))
      fail(ctx, "'points_per_dim' is only valid for grid coverings");
  } else {
    fail(ctx, "method must be 'grid' or 'random'");
  }
  return cc;
}

SolverConfig parse_solver(const json& obj) {
  const std::string ctx = "solver";
  check_keys(obj,
             {"algorithm", "gamma", "lambda", "alpha", "eps_stop", "max_iters",
              "seed"},
             ctx);
  if (obj.contains("algorithm") &&
      obj["algorithm"].get<std::string>() != "divide-blo")
    fail(ctx, "solver algorithm must be 'divide-blo'");
  SolverConfig sc;
  sc.gamma = get_num(obj, "gamma", sc.gamma, ctx);
  sc.lambda = get_num(obj, "lambda", sc.lambda, ctx);
  if (obj.contains("alpha")) {
    if (obj["alpha"].is_string()) {
      if (obj["alpha"].get<std::string>() != "auto")
        fail(ctx, "alpha must be a number or \"auto\"");
      sc.alpha = std::nullopt;
    } else if (obj["alpha"].is_number()) {
      sc.alpha = obj["alpha"].get<double>();
    } else {
      fail(ctx, "alpha must be a number or \"auto\"");
    }
  }
  sc.eps_stop = get_num(obj, "eps_stop", sc.eps_stop, ctx);
  sc.max_iters = get_int(obj, "max_iters", sc.max_iters, ctx);
  sc.seed = static_cast<std::uint64_t>(get_int(obj, "seed", 0, ctx));
  sc.validate();
  return sc;
}

BaselineConfig parse_baseline(const json& obj) {
  const std::string ctx = "baseline";
  check_keys(obj,
             {"algorithm", "eta1", "eta2", "gamma", "inner_iters", "max_iters",
              "seed"},
             ctx);
  if (!obj.contains("algorithm") || !obj["algorithm"].is_string())
    fail(ctx, "missing string 'algorithm'");
  BaselineConfig bc;
  const std::string algo = obj["algorithm"].get<std::string>();
  if (algo == "ttsa") {
    bc.algorithm = BaselineAlgorithm::ttsa;
    if (obj.contains("gamma") || obj.contains("inner_iters"))
      fail(ctx, "'gamma'/'inner_iters' apply to vpbgd only");
  } else if (algo == "vpbgd") {
    bc.algorithm = BaselineAlgorithm::vpbgd;
    bc.gamma = get_num(obj, "gamma", 80, ctx);
    bc.inner_iters = get_int(obj, "inner_iters", bc.inner_iters, ctx);
  } else {
    fail(ctx, "algorithm must be 'ttsa' or 'vpbgd'");
  }
  bc.eta1 = get_num(obj, "eta1", bc.eta1, ctx);
  bc.eta2 = get_num(obj, "eta2", bc.eta2, ctx);
  bc.max_iters = get_int(obj, "max_iters", bc.max_iters, ctx);
  bc.seed = static_cast<std::uint64_t>(get_int(obj, "seed", 0, ctx));
  bc.validate();
  return bc;
}

json parse_text(const std::string& text) {
  json root = json::parse(text, nullptr, true, /*ignore_comments=*/false);
  if (!root.is_object()) throw std::invalid_argument("config: root must be an object");
  return root;
}

std::vector<int> get_int_list(const json& obj, const char* key,
                              const std::string& context) {
  if (!obj.contains(key)) fail(context, std::string("missing '") + key + "'");
  if (!obj[key].is_array() || obj[key].empty())
    fail(context, std::string(key) + " must be a non-empty array");
  std::vector<int> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number_integer())
      fail(context, std::string(key) + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

ProblemSpec ProblemConfig::build() const {
  if (name == "custom")
    return make_quad_trig(f, g, BoxSet::interval(x_lo, x_hi),
                          BoxSet::interval(y_lo, y_hi), constants_grid);
  return make_problem(name);
}

Covering CoveringConfig::build(const BoxSet& y_domain) const {
  if (method == CoveringMethod::grid) return grid_covering(y_domain, points_per_dim);
  return random_covering(y_domain, k, seed);
}

RunConfig parse_run_config(const std::string& json_text) {
  const json root = parse_text(json_text);
  check_keys(root, {"problem", "covering", "solver", "baseline", "sweep"}, "root");
  if (!root.contains("problem")) fail("root", "missing 'problem'");

  RunConfig rc;
  rc.problem = parse_problem(root["problem"]);

  const bool has_solver = root.contains("solver");
  const bool has_baseline = root.contains("baseline");
  if (has_solver == has_baseline)
    fail("root", "exactly one of 'solver' or 'baseline' is required");

  if (root.contains("covering")) rc.covering = parse_covering(root["covering"]);
  if (has_solver) {
    if (!root.contains("covering")) fail("root", "solver runs need 'covering'");
    rc.run = parse_solver(root["solver"]);
  } else {
    rc.run = parse_baseline(root["baseline"]);
  }
  return rc;
}

SweepSpec parse_sweep_config(const std::string& json_text) {
  const json root = parse_text(json_text);
  check_keys(root, {"problem", "covering", "solver", "baseline", "sweep"}, "root");
  if (!root.contains("problem")) fail("root", "missing 'problem'");
  if (!root.contains("sweep")) fail("root", "missing 'sweep'");

  SweepSpec spec;
  spec.problem = parse_problem(root["problem"]);

  const json& sw = root["sweep"];
  check_keys(sw,
             {"n_seeds", "base_seed", "oracle_grid", "divide-blo", "ttsa",
              "vpbgd"},
             "sweep");
  spec.n_seeds = static_cast<int>(get_int(sw, "n_seeds", 1, "sweep"));
  if (spec.n_seeds < 1) fail("sweep", "n_seeds >= 1 required");
  spec.base_seed = static_cast<std::uint64_t>(get_int(sw, "base_seed", 0, "sweep"));
  spec.oracle_grid = static_cast<int>(get_int(sw, "oracle_grid", 1001, "sweep"));

  if (sw.contains("divide-blo")) {
    const json& d = sw["divide-blo"];
    const std::string ctx = "sweep.divide-blo";
    check_keys(d, {"gammas", "alphas", "lambdas", "ks", "eps_stop", "max_iters"},
               ctx);
    DivideBloGrid g;
    g.gammas = get_num_list(d, "gammas", ctx);
    g.alphas = get_num_list(d, "alphas", ctx);
    g.lambdas = get_num_list(d, "lambdas", ctx);
    g.ks = get_int_list(d, "ks", ctx);
    g.eps_stop = get_num(d, "eps_stop", g.eps_stop, ctx);
    g.max_iters = get_int(d, "max_iters", g.max_iters, ctx);
    spec.divide_blo = std::move(g);
  }
  if (sw.contains("ttsa")) {
    const json& t = sw["ttsa"];
    const std::string ctx = "sweep.ttsa";
    check_keys(t, {"etas1", "etas2", "max_iters"}, ctx);
    TtsaGrid g;
    g.etas1 = get_num_list(t, "etas1", ctx);
    g.etas2 = get_num_list(t, "etas2", ctx);
    g.max_iters = get_int(t, "max_iters", g.max_iters, ctx);
    spec.ttsa = std::move(g);
  }
  if (sw.contains("vpbgd")) {
    const json& v = sw["vpbgd"];
    const std::string ctx = "sweep.vpbgd";
    check_keys(v, {"gammas", "etas1", "etas2", "inner_iters", "max_iters"}, ctx);
    VpbgdGrid g;
    g.gammas = get_num_list(v, "gammas", ctx);
    g.etas1 = get_num_list(v, "etas1", ctx);
    g.etas2 = get_num_list(v, "etas2", ctx);
    g.inner_iters = get_int(v, "inner_iters", g.inner_iters, ctx);
    g.max_iters = get_int(v, "max_iters", g.max_iters, ctx);
    spec.vpbgd = std::move(g);
  }
  if (!spec.divide_blo && !spec.ttsa && !spec.vpbgd)
    fail("sweep", "at least one algorithm section is required");
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace blo::bench
