#include "blo/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace blo {
namespace {

constexpr double kFloor = 1e-12;
constexpr double kSafety = 1.1;

Eigen::VectorXd linspace(double lo, double hi, int count) {
  Eigen::VectorXd v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) v[i] = lo + step * i;
  v[count - 1] = hi;
  return v;
}

// Iterates a tensor grid over the concatenated (x, y) box, invoking fn with
// the split coordinates.
template <typename Fn>
void for_each_grid_point(const BoxSet& xd, const BoxSet& yd, int per_dim,
                         Fn&& fn) {
  const Eigen::Index n = xd.dim(), m = yd.dim();
  const Eigen::Index d = n + m;

  // Cap total work; derive_constants is desk-scale plumbing.
  double total = 1;
  for (Eigen::Index i = 0; i < d; ++i) total *= per_dim;
  int eff = per_dim;
  while (total > 4e6 && eff > 3) {
    eff = eff / 2 + 1;
    total = 1;
    for (Eigen::Index i = 0; i < d; ++i) total *= eff;
  }

  std::vector<Eigen::VectorXd> axes;
  axes.reserve(static_cast<size_t>(d));
  for (Eigen::Index i = 0; i < n; ++i)
    axes.push_back(linspace(xd.lower[i], xd.upper[i],
                            xd.lower[i] == xd.upper[i] ? 1 : eff));
  for (Eigen::Index i = 0; i < m; ++i)
    axes.push_back(linspace(yd.lower[i], yd.upper[i],
                            yd.lower[i] == yd.upper[i] ? 1 : eff));

  std::vector<Eigen::Index> idx(static_cast<size_t>(d), 0);
  Eigen::VectorXd x(n), y(m);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i)
      x[i] = axes[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    for (Eigen::Index i = 0; i < m; ++i)
      y[i] = axes[static_cast<size_t>(n + i)][idx[static_cast<size_t>(n + i)]];
    fn(x, y);

    Eigen::Index j = 0;
    for (; j < d; ++j) {
      if (++idx[static_cast<size_t>(j)] < axes[static_cast<size_t>(j)].size())
        break;
      idx[static_cast<size_t>(j)] = 0;
    }
    if (j == d) break;
  }
}

// Full gradient (grad_x; grad_y) of fn at (x, y).
Eigen::VectorXd full_gradient(const SmoothFunction& fn, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) {
  Eigen::VectorXd g(x.size() + y.size());
  g.head(x.size()) = fn.grad_x(x, y);
  g.tail(y.size()) = fn.grad_y(x, y);
  return g;
}

// Finite-difference Hessian Frobenius norm at (x, y). Sample points are
// clamped into the box and the quotient uses the realized displacement, so
// boundary points fall back to one-sided differences.
double fd_hessian_norm(const SmoothFunction& fn, const BoxSet& xd,
                       const BoxSet& yd, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y, double h) {
  const Eigen::Index n = x.size(), m = y.size();
  const Eigen::Index d = n + m;
  Eigen::MatrixXd hess(d, d);
  Eigen::VectorXd z(d);
  z.head(n) = x;
  z.tail(m) = y;
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::VectorXd zp = z, zm = z;
    const double lo = j < n ? xd.lower[j] : yd.lower[j - n];
    const double hi = j < n ? xd.upper[j] : yd.upper[j - n];
    zp[j] = std::min(z[j] + h, hi);
    zm[j] = std::max(z[j] - h, lo);
    const double spread = zp[j] - zm[j];
    if (spread <= 0) {
      hess.col(j).setZero();
      continue;
    }
    const Eigen::VectorXd gp =
        full_gradient(fn, zp.head(n), zp.tail(m));
    const Eigen::VectorXd gm =
        full_gradient(fn, zm.head(n), zm.tail(m));
    hess.col(j) = (gp - gm) / spread;
  }
  return hess.norm();
}

ProblemSpec make_quad_trig_impl(const QuadTrigCoeffs& f, const QuadTrigCoeffs& g,
                                const BoxSet& x_domain, const BoxSet& y_domain,
                                int constants_grid) {
  if (x_domain.dim() != 1 || y_domain.dim() != 1)
    throw std::invalid_argument("make_quad_trig: scalar domains required");

  auto make_fn = [](const QuadTrigCoeffs& cf) {
    SmoothFunction fn;
    fn.eval = [cf](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
      const double xv = x[0], yv = y[0];
      return cf.xx * xv * xv + cf.xy * xv * yv + cf.yy * yv * yv +
             cf.x_lin * xv + cf.y_lin * yv + cf.c +
             cf.amp * std::sin(cf.freq * yv + cf.phase);
    };
    fn.grad_x = [cf](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
      Eigen::VectorXd g1(1);
      g1[0] = 2.0 * cf.xx * x[0] + cf.xy * y[0] + cf.x_lin;
      return g1;
    };
    fn.grad_y = [cf](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
      Eigen::VectorXd g1(1);
      g1[0] = cf.xy * x[0] + 2.0 * cf.yy * y[0] + cf.y_lin +
              cf.amp * cf.freq * std::cos(cf.freq * y[0] + cf.phase);
      return g1;
    };
    return fn;
  };

  ProblemSpec p;
  p.upper = make_fn(f);
  p.lower = make_fn(g);
  p.x_domain = x_domain;
  p.y_domain = y_domain;
  p.constants = derive_constants_numerically(p, constants_grid);
  return p;
}

}  // namespace

void SmoothnessConstants::validate() const {
  if (!(L_f > 0 && L_g > 0 && Lbar_f > 0 && Lbar_g > 0 && D > 0))
    throw std::invalid_argument(
        "SmoothnessConstants: all constants must be strictly positive");
}

ProblemSpec make_quad_trig(const QuadTrigCoeffs& f, const QuadTrigCoeffs& g,
                           const BoxSet& x_domain, const BoxSet& y_domain,
                           int constants_grid) {
  return make_quad_trig_impl(f, g, x_domain, y_domain, constants_grid);
}

ProblemSpec make_synthetic_1d() {
  static const ProblemSpec cached = [] {
    QuadTrigCoeffs f;
    f.xx = 3;
    f.xy = 7;
    f.yy = 5;
    f.x_lin = 1;
    f.y_lin = -1;
    f.c = 5;
    QuadTrigCoeffs g;
    g.yy = 2;
    g.amp = 1;
    g.freq = 10;
    return make_quad_trig_impl(f, g, BoxSet::interval(-10, 10),
                               BoxSet::interval(-5, 5), 1001);
  }();
  return cached;
}

SmoothnessConstants derive_constants_numerically(const ProblemSpec& p,
                                                 int grid_per_dim) {
  if (grid_per_dim < 2)
    throw std::invalid_argument("derive_constants_numerically: grid_per_dim >= 2");

  double sup_gf = 0, sup_gg = 0, sup_hf = 0, sup_hg = 0;
  // Hessian probe step; small relative to the benchmark box scales.
  const double h = 1e-4;

  for_each_grid_point(
      p.x_domain, p.y_domain, grid_per_dim,
      [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        const double fv = p.upper.eval(x, y);
        const double gv = p.lower.eval(x, y);
        const double nf = full_gradient(p.upper, x, y).norm();
        const double ng = full_gradient(p.lower, x, y).norm();
        const double hf = fd_hessian_norm(p.upper, p.x_domain, p.y_domain, x, y, h);
        const double hg = fd_hessian_norm(p.lower, p.x_domain, p.y_domain, x, y, h);
        if (!std::isfinite(fv) || !std::isfinite(gv) || !std::isfinite(nf) ||
            !std::isfinite(ng) || !std::isfinite(hf) || !std::isfinite(hg))
          throw std::runtime_error(
              "derive_constants_numerically: non-finite evaluation");
        sup_gf = std::max(sup_gf, nf);
        sup_gg = std::max(sup_gg, ng);
        sup_hf = std::max(sup_hf, hf);
        sup_hg = std::max(sup_hg, hg);
      });

  SmoothnessConstants c;
  c.L_f = std::max(kSafety * sup_gf, kFloor);
  c.L_g = std::max(kSafety * sup_gg, kFloor);
  c.Lbar_f = std::max(kSafety * sup_hf, kFloor);
  c.Lbar_g = std::max(kSafety * sup_hg, kFloor);
  c.D = std::max(p.y_domain.max_corner_norm(), kFloor);
  c.validate();
  return c;
}

ProblemSpec make_problem(const std::string& name) {
  if (name == "synthetic-1d") return make_synthetic_1d();
  throw std::invalid_argument("make_problem: unknown problem '" + name +
                              "'; known: synthetic-1d");
}

std::vector<std::string> problem_names() { return {"synthetic-1d"}; }

}  // namespace blo
