#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "bc.hpp"
#include "boundary_ops.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "kernel.hpp"
#include "manufactured.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "trace.hpp"

namespace cbie {

enum class SolveMethod { direct, least_squares_fallback };

inline const char* to_string(SolveMethod m) {
  return m == SolveMethod::direct ? "direct" : "least-squares-fallback";
}

struct InteriorSample {
  Point2 point;
  cplx value;
};

struct SolveReport {
  std::vector<cplx> u_lower, u_upper;
  double residual_norm = 0;
  double condition_estimate = 0;
  SolveMethod method = SolveMethod::direct;
  std::vector<InteriorSample> interior_samples;
};

inline constexpr double default_cond_threshold = 1e8;

// Minimum-norm least-squares solution.
inline Vector solve_least_squares(const FredholmSystem& sys) {
  Eigen::BDCSVD<Matrix> svd(sys.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.solve(sys.rhs);
}

// 1-norm condition estimate from the LU factors.
inline double condition_estimate(const Matrix& a) {
  Eigen::PartialPivLU<Matrix> lu(a);
  double rc = lu.rcond();
  return rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

inline SolveReport solve_system(const FredholmSystem& sys, double cond_threshold = default_cond_threshold) {
  if (!sys.matrix.allFinite() || !sys.rhs.allFinite()) throw NumericError("solve_system: non-finite system entries");
  Eigen::PartialPivLU<Matrix> lu(sys.matrix);
  double rc = lu.rcond();
  SolveReport rep;
  rep.condition_estimate = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  Vector x;
  if (rep.condition_estimate <= cond_threshold) {
    x = lu.solve(sys.rhs);
    rep.method = SolveMethod::direct;
  }
  if (x.size() == 0 || !x.allFinite()) {
    x = solve_least_squares(sys);
    rep.method = SolveMethod::least_squares_fallback;
  }
  if (!x.allFinite()) throw SolverError("solve_system: direct and least-squares solves both failed");
  std::size_t n = sys.nodes();
  rep.u_lower.assign(x.data(), x.data() + n);
  rep.u_upper.assign(x.data() + n, x.data() + 2 * n);
  rep.residual_norm = residual_inf(sys, x);
  if (!std::isfinite(rep.residual_norm)) throw SolverError("solve_system: non-finite residual");
  return rep;
}

// Trace of the solved problem: u from the solve, du/dx2 from the boundary data.
inline BoundaryTrace solved_trace(const SolveReport& rep, const BCSpec& bc, const QuadratureRule& rule) {
  BoundaryTrace t;
  t.rule = rule;
  t.u_lower = rep.u_lower;
  t.u_upper = rep.u_upper;
  t.du_lower = du_from_bc(rep.u_lower, bc.alpha1, sample(bc.phi1, rule));
  t.du_upper = du_from_bc(rep.u_upper, bc.alpha2, sample(bc.phi2, rule));
  return t;
}

// u(xi) = (1/2pi) int [u] / (-xi2 + i (x1 - xi1)) dx1
//       - int [du/dx2 U(x - xi) (1 - i gamma')] dx1 + jump,
// where u (dU/dx2 + i dU/dx1) has been collapsed to the x2-free kernel and the
// jump term carries the branch cut of U along x1 = xi1.
class InteriorEvaluator {
 public:
  InteriorEvaluator(const PlaneDomain& domain, const BoundaryTrace& trace) : grid_(domain, trace.rule), tr_(trace) {
    tr_.validate();
  }

  cplx operator()(Point2 xi) const {
    const PlaneDomain& d = grid_.domain();
    if (!(xi.x1 > d.a1 && xi.x1 < d.b1)) throw DomainError("reconstruct_interior: xi1 outside (a1, b1)");
    double g1 = eval_curve(d, Side::lower, xi.x1).first, g2 = eval_curve(d, Side::upper, xi.x1).first;
    if (!(xi.x2 > g1 && xi.x2 < g2)) throw DomainError("reconstruct_interior: point not strictly inside the domain");
    if (xi.x2 == 0) throw DomainError("reconstruct_interior: xi2 = 0 lies on the kernel singular line");
    const QuadratureRule& r = grid_.rule();
    int node = -1;
    for (std::size_t m = 0; m < r.size(); ++m)
      if (r.nodes[m] == xi.x1) node = static_cast<int>(m);
    SingularWeights sw = grid_.product().at(xi.x1);
    Target t{xi.x1, node, &sw};
    std::size_t n = r.size();

    auto wa = cauchy_kernel_weights(grid_, t, {-1, xi.x2});
    auto w0 = log_kernel_weights(grid_, t, {-1, xi.x2});
    cplx total = 0;
    for (std::size_t m = 0; m < n; ++m) total += wa[m] * (tr_.u_upper[m] - tr_.u_lower[m]);
    for (int j = 0; j < 2; ++j) {
      auto wj = log_kernel_weights(grid_, t, {j, xi.x2});
      cplx s = 0;
      for (std::size_t m = 0; m < n; ++m) s += (wj[m] - w0[m]) * arc_factor(grid_, j, m) * tr_.du(j)[m];
      total -= curve_sign(j) * s;
    }
    cplx u1 = node >= 0 ? tr_.u_lower[node] : grid_.product().interpolate(tr_.u_lower, xi.x1);
    cplx u2 = node >= 0 ? tr_.u_upper[node] : grid_.product().interpolate(tr_.u_upper, xi.x1);
    total += u2 * (heaviside_sym(xi.x2) - heaviside_sym(xi.x2 - g2)) +
             u1 * (heaviside_sym(xi.x2 - g1) - heaviside_sym(xi.x2));
    return total;
  }

 private:
  BoundaryGrid grid_;
  BoundaryTrace tr_;
};

inline cplx reconstruct_interior(const PlaneDomain& domain, const BoundaryTrace& trace, Point2 xi) {
  return InteriorEvaluator(domain, trace)(xi);
}

// 5 x 4 grid over 60% of the bounding box; points outside the domain or on
// the line x2 = 0 are dropped.
inline std::vector<Point2> interior_grid(const PlaneDomain& d, int nx1 = 5, int nx2 = 4, double scale = 0.6) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const int probes = 401;
  for (int p = 0; p < probes; ++p) {
    double x = d.a1 + (d.b1 - d.a1) * p / (probes - 1);
    double g1 = d.lower.eval(x).value, g2 = d.upper.eval(x).value;
    if (std::isfinite(g1)) lo = std::min(lo, g1);
    if (std::isfinite(g2)) hi = std::max(hi, g2);
  }
  double c1 = 0.5 * (d.a1 + d.b1), h1 = 0.5 * (d.b1 - d.a1) * scale;
  double c2 = 0.5 * (lo + hi), h2 = 0.5 * (hi - lo) * scale;
  std::vector<Point2> pts;
  for (int i = 0; i < nx1; ++i)
    for (int k = 0; k < nx2; ++k) {
      double x1 = c1 + h1 * (nx1 == 1 ? 0.0 : -1.0 + 2.0 * i / (nx1 - 1));
      double x2 = c2 + h2 * (nx2 == 1 ? 0.0 : -1.0 + 2.0 * k / (nx2 - 1));
      if (x2 == 0) continue;
      if (!(x1 > d.a1 && x1 < d.b1)) continue;
      if (x2 > d.lower.eval(x1).value && x2 < d.upper.eval(x1).value) pts.push_back({x1, x2});
    }
  return pts;
}

inline std::vector<InteriorSample> sample_interior(const PlaneDomain& d, const BoundaryTrace& trace,
                                                   const std::vector<Point2>& points) {
  InteriorEvaluator ev(d, trace);
  std::vector<InteriorSample> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = {points[i], ev(points[i])}; });
  return out;
}

struct ConvergenceRow {
  int n = 0;
  std::optional<double> trace_error;     // interior-window max node error
  std::optional<double> interior_error;  // max error on the interior grid
  double residual = 0;
  double condition = 0;
  SolveMethod method = SolveMethod::direct;
  std::optional<double> ratio;  // previous trace_error / this one
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

inline double window_max_error(const QuadratureRule& rule, const std::vector<cplx>& a, const std::vector<cplx>& b,
                               double delta) {
  double e = 0;
  for (std::size_t m = 0; m < rule.size(); ++m)
    if (rule.nodes[m] >= rule.a + delta && rule.nodes[m] <= rule.b - delta) e = std::max(e, std::abs(a[m] - b[m]));
  return e;
}

struct SweepOptions {
  RuleFamily family = RuleFamily::gauss_legendre;
  double cond_threshold = default_cond_threshold;
  double window_fraction = 0.1;
};

inline ConvergenceTable convergence_sweep(const PlaneDomain& d, const BCSpec& bc, const std::vector<int>& levels,
                                          const std::optional<SolutionSpec>& truth = std::nullopt,
                                          const SweepOptions& opt = {}) {
  if (levels.empty()) throw ConfigurationError("levels: need at least one level");
  for (std::size_t k = 1; k < levels.size(); ++k)
    if (levels[k] <= levels[k - 1]) throw ConfigurationError("levels: must increase strictly");
  ConvergenceTable table;
  double delta = opt.window_fraction * (d.b1 - d.a1);
  for (int n : levels) {
    QuadratureRule rule = build_rule(opt.family, n, d.a1, d.b1);
    FredholmSystem sys = assemble(d, bc, rule);
    SolveReport rep = solve_system(sys, opt.cond_threshold);
    ConvergenceRow row;
    row.n = n;
    row.residual = rep.residual_norm;
    row.condition = rep.condition_estimate;
    row.method = rep.method;
    if (truth) {
      BoundaryTrace exact = make_trace(*truth, d, rule);
      row.trace_error = std::max(window_max_error(rule, rep.u_lower, exact.u_lower, delta),
                                 window_max_error(rule, rep.u_upper, exact.u_upper, delta));
      auto pts = interior_grid(d);
      auto got = sample_interior(d, solved_trace(rep, bc, rule), pts);
      double e = 0;
      for (const auto& s : got) e = std::max(e, std::abs(s.value - eval_solution(*truth, s.point.x1, s.point.x2).u));
      row.interior_error = e;
      if (!table.rows.empty() && table.rows.back().trace_error && *row.trace_error > 0)
        row.ratio = *table.rows.back().trace_error / *row.trace_error;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace cbie
