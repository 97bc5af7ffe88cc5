#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "boundary_ops.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "trace.hpp"

namespace cbie {

enum class ConditionId { eq8, eq9, eq10, eq11, eq12, eq7_boundary };

inline const char* to_string(ConditionId c) {
  switch (c) {
    case ConditionId::eq8: return "eq8";
    case ConditionId::eq9: return "eq9";
    case ConditionId::eq10: return "eq10";
    case ConditionId::eq11: return "eq11";
    case ConditionId::eq12: return "eq12";
    case ConditionId::eq7_boundary: return "eq7-boundary";
  }
  return "?";
}

inline ConditionId condition_from_string(const std::string& s) {
  for (auto c : {ConditionId::eq8, ConditionId::eq9, ConditionId::eq10, ConditionId::eq11, ConditionId::eq12,
                 ConditionId::eq7_boundary})
    if (s == to_string(c)) return c;
  throw ConfigurationError("conditions: unknown condition '" + s + "'");
}

// resolved: the implemented form. as_printed: the literal form of
// eq7/eq8 (identical to resolved for eq9-eq12). negated_integrals: all
// integral terms with flipped sign.
enum class Reading { resolved, as_printed, negated_integrals };

inline const char* to_string(Reading r) {
  switch (r) {
    case Reading::resolved: return "resolved";
    case Reading::as_printed: return "as-printed";
    case Reading::negated_integrals: return "negated-integrals";
  }
  return "?";
}

struct SingularFactor {
  cplx kernel;     // dU_dx2(x1 - xi1, gamma(x1) - gamma(xi1))
  cplx singular;   // (1/2pi) / ((x1 - xi1)(gamma'(xi1) + i))
  cplx remainder;  // kernel - singular, bounded as x1 -> xi1
};

inline SingularFactor singular_factor(const PlaneDomain& d, Side side, double x1, double xi1) {
  if (x1 == xi1) throw KernelSingularityError("singular_factor: x1 = xi1", 0.0, 0.0, 0.0);
  CurvePoint px = eval_curve_full(d, side, x1), pxi = eval_curve_full(d, side, xi1);
  double dx = x1 - xi1;
  // mean-value slope q: kernel = (1/2pi) / (dx (q + i))
  double q = (px.value - pxi.value) / dx;
  SingularFactor f;
  f.kernel = 1.0 / (two_pi * dx * cplx(q, 1.0));
  f.singular = 1.0 / (two_pi * dx * cplx(pxi.slope, 1.0));
  f.remainder = f.kernel - f.singular;
  return f;
}

class ConditionEvaluator {
 public:
  ConditionEvaluator(const PlaneDomain& domain, const BoundaryTrace& trace) : grid_(domain, trace.rule), tr_(trace) {
    tr_.validate();
  }

  const BoundaryGrid& grid() const { return grid_; }

  cplx eval(ConditionId id, std::size_t i, Reading reading, Side side = Side::lower) const {
    if (i >= grid_.size()) throw DomainError("xi_index out of range");
    SingularWeights sw = grid_.product().at(grid_.rule().nodes[i]);
    Target t{grid_.rule().nodes[i], static_cast<int>(i), &sw};
    switch (id) {
      case ConditionId::eq8: return eq8(t, i, reading);
      case ConditionId::eq7_boundary: return eq7(t, i, static_cast<int>(side), reading);
      default: return nc(t, i, id, reading);
    }
  }

 private:
  double sign(Reading r) const { return r == Reading::negated_integrals ? -1.0 : 1.0; }

  // (1/2pi) int [u] / (-xi2 + i (x - xi1)) dx
  cplx jump_term(const Target& t, double xi2) const {
    auto w = cauchy_kernel_weights(grid_, t, {-1, xi2});
    cplx s = 0;
    for (std::size_t m = 0; m < w.size(); ++m) s += w[m] * (tr_.u_upper[m] - tr_.u_lower[m]);
    return s;
  }

  // int v_j U(x - xi; x on gamma_j) slope_factor dx; slope of curve k in the factor
  cplx log_term(const Target& t, int j, double xi2, int slope_curve) const {
    auto w1 = log_kernel_weights(grid_, t, {j, xi2});
    auto w0 = log_kernel_weights(grid_, t, {-1, xi2});
    const auto& v = tr_.du(j);
    cplx s = 0;
    for (std::size_t m = 0; m < v.size(); ++m) s += (w1[m] - w0[m]) * arc_factor(grid_, slope_curve, m) * v[m];
    return s;
  }

  cplx heaviside_jump(std::size_t i, double xi2) const {
    double g1 = grid_.curve(0, i).value, g2 = grid_.curve(1, i).value;
    return tr_.u_upper[i] * (heaviside_sym(xi2) - heaviside_sym(xi2 - g2)) +
           tr_.u_lower[i] * (heaviside_sym(xi2 - g1) - heaviside_sym(xi2));
  }

  // 2 int [v (1 - i gamma') dU/dx2(x - xi)] with xi on gamma_k
  cplx plemelj(const Target& t, int k) const {
    double c = grid_.curve(k, t.node).value;
    cplx s = 0;
    for (int j = 0; j < 2; ++j) {
      auto w = cauchy_kernel_weights(grid_, t, {j, c});
      const auto& v = tr_.du(j);
      cplx part = 0;
      for (std::size_t m = 0; m < v.size(); ++m) part += w[m] * arc_factor(grid_, j, m) * v[m];
      s += curve_sign(j) * part;
    }
    return 2.0 * s;
  }

  cplx eq8(const Target& t, std::size_t i, Reading r) const {
    double xi2 = grid_.curve(0, i).value;
    double sg = sign(r);
    cplx i2 = log_term(t, 1, xi2, 1), i1 = log_term(t, 0, xi2, 0);
    if (r == Reading::as_printed) return tr_.u_lower[i] - (tr_.u_upper[i] - 2.0 * i2 + 2.0 * i1);
    cplx rhs = 2.0 * heaviside_jump(i, xi2) + sg * (2.0 * jump_term(t, xi2) - 2.0 * i2 + 2.0 * i1);
    return tr_.u_lower[i] - rhs;
  }

  cplx eq7(const Target& t, std::size_t i, int side, Reading r) const {
    double xi2 = grid_.curve(side, i).value;
    cplx a = jump_term(t, xi2);
    if (r == Reading::as_printed) {
      cplx lhs = a - log_term(t, 1, xi2, 1) + log_term(t, 0, xi2, 1);
      return lhs - 0.5 * tr_.u(side)[i];
    }
    cplx integrals = a - log_term(t, 1, xi2, 1) + log_term(t, 0, xi2, 0);
    return sign(r) * integrals + heaviside_jump(i, xi2) - 0.5 * tr_.u(side)[i];
  }

  cplx nc(const Target& t, std::size_t i, ConditionId id, Reading r) const {
    double sg = sign(r);
    switch (id) {
      case ConditionId::eq10: return tr_.du_lower[i] - sg * plemelj(t, 0);
      case ConditionId::eq12: return tr_.du_upper[i] - sg * plemelj(t, 1);
      case ConditionId::eq9:
        return tr_.dt(0)[i] - (tr_.dt(1)[i] - I_unit * tr_.du_upper[i] + I_unit * sg * plemelj(t, 0));
      case ConditionId::eq11:
        return tr_.dt(1)[i] - (tr_.dt(0)[i] - I_unit * tr_.du_lower[i] + I_unit * sg * plemelj(t, 1));
      default: break;
    }
    throw ConfigurationError("conditions: not a Plemelj-type condition");
  }

  BoundaryGrid grid_;
  BoundaryTrace tr_;
};

inline cplx residual_eq8(const BoundaryTrace& trace, const PlaneDomain& domain, std::size_t xi_index,
                         Reading reading = Reading::resolved) {
  return ConditionEvaluator(domain, trace).eval(ConditionId::eq8, xi_index, reading);
}

inline cplx residual_nc(const BoundaryTrace& trace, const PlaneDomain& domain, ConditionId which,
                        std::size_t xi_index, Reading reading = Reading::resolved) {
  if (which == ConditionId::eq8 || which == ConditionId::eq7_boundary)
    throw ConfigurationError("residual_nc: expects eq9, eq10, eq11 or eq12");
  if ((which == ConditionId::eq9 || which == ConditionId::eq11) && !trace.has_tangential())
    throw DataError("residual_nc: eq9/eq11 need the tangential derivative du/dx1");
  return ConditionEvaluator(domain, trace).eval(which, xi_index, reading);
}

inline cplx residual_eq7_boundary(const BoundaryTrace& trace, const PlaneDomain& domain, std::size_t xi_index,
                                  Side side, Reading reading = Reading::resolved) {
  return ConditionEvaluator(domain, trace).eval(ConditionId::eq7_boundary, xi_index, reading, side);
}

struct ResidualReport {
  ConditionId id = ConditionId::eq8;
  std::vector<double> per_node;
  double sup_window = 0;
  double delta = 0;
};

inline double window_sup(const QuadratureRule& rule, const std::vector<double>& values, double delta) {
  double s = 0;
  for (std::size_t m = 0; m < rule.size(); ++m)
    if (rule.nodes[m] >= rule.a + delta && rule.nodes[m] <= rule.b - delta) s = std::max(s, values[m]);
  return s;
}

inline ResidualReport residual_report(const BoundaryTrace& trace, const PlaneDomain& domain, ConditionId id,
                                      Reading reading = Reading::resolved, double window_fraction = 0.1,
                                      Side side = Side::lower) {
  if ((id == ConditionId::eq9 || id == ConditionId::eq11) && !trace.has_tangential())
    throw DataError("residual_report: eq9/eq11 need the tangential derivative du/dx1");
  ConditionEvaluator ev(domain, trace);
  ResidualReport rep;
  rep.id = id;
  rep.delta = window_fraction * (domain.b1 - domain.a1);
  rep.per_node.assign(trace.rule.size(), 0.0);
  parallel_for(trace.rule.size(), [&](std::size_t i) { rep.per_node[i] = std::abs(ev.eval(id, i, reading, side)); });
  rep.sup_window = window_sup(trace.rule, rep.per_node, rep.delta);
  return rep;
}

}  // namespace cbie
