#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bc.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"
#include "trace.hpp"

namespace cbie {

// u(x) = F(z) + g(x1), z = x2 + i x1. Every such u solves u_22 + i u_12 = 0.
struct SolutionSpec {
  enum class FKind { polynomial, exponential };
  std::string name;
  FKind f_kind = FKind::polynomial;
  std::vector<cplx> f_coeffs;  // ascending powers of z
  cplx exp_amplitude = 1;      // F = A exp(s z)
  cplx exp_scale = 1;
  std::vector<cplx> g_coeffs;  // ascending powers of x1
};

struct SolutionValue {
  cplx u;
  cplx du_dx2;
  cplx du_dx1;
};

namespace detail {
// p(x) and p'(x) for ascending coefficients.
inline std::pair<cplx, cplx> poly_eval(const std::vector<cplx>& c, cplx x) {
  cplx v = 0, d = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    d = d * x + v;
    v = v * x + c[k];
  }
  return {v, d};
}
}  // namespace detail

inline SolutionValue eval_solution(const SolutionSpec& s, double x1, double x2) {
  cplx z(x2, x1);
  cplx f, fp;
  if (s.f_kind == SolutionSpec::FKind::exponential) {
    f = s.exp_amplitude * std::exp(s.exp_scale * z);
    fp = s.exp_scale * f;
  } else {
    std::tie(f, fp) = detail::poly_eval(s.f_coeffs, z);
  }
  auto [g, gp] = detail::poly_eval(s.g_coeffs, cplx(x1, 0));
  return {f + g, fp, I_unit * fp + gp};
}

inline SolutionSpec polynomial_solution(std::string name, std::vector<cplx> f, std::vector<cplx> g = {}) {
  SolutionSpec s;
  s.name = std::move(name);
  s.f_coeffs = std::move(f);
  s.g_coeffs = std::move(g);
  return s;
}

inline SolutionSpec exponential_solution(std::string name, cplx amplitude, cplx scale, std::vector<cplx> g = {}) {
  SolutionSpec s;
  s.name = std::move(name);
  s.f_kind = SolutionSpec::FKind::exponential;
  s.exp_amplitude = amplitude;
  s.exp_scale = scale;
  s.g_coeffs = std::move(g);
  return s;
}

// Multiplies g by ((x1 - a)(b - x1))^power; the result is still exact.
inline SolutionSpec with_endpoint_taper(SolutionSpec s, double a, double b, int power) {
  std::vector<cplx> factor{-a * b, a + b, -1.0};  // (x - a)(b - x)
  for (int p = 0; p < power; ++p) {
    std::vector<cplx> out(s.g_coeffs.size() + 2, 0.0);
    for (std::size_t i = 0; i < s.g_coeffs.size(); ++i)
      for (std::size_t j = 0; j < 3; ++j) out[i + j] += s.g_coeffs[i] * factor[j];
    s.g_coeffs = std::move(out);
  }
  return s;
}

inline std::vector<std::string> canonical_names() { return {"one", "x1", "z", "z2", "z2_plus_cubic", "exp_half"}; }

inline SolutionSpec solution_by_name(const std::string& name) {
  if (name == "zero") return polynomial_solution(name, {}, {});
  if (name == "one") return polynomial_solution(name, {1.0});
  if (name == "x1") return polynomial_solution(name, {}, {0.0, 1.0});
  if (name == "z") return polynomial_solution(name, {0.0, 1.0});
  if (name == "z2") return polynomial_solution(name, {0.0, 0.0, 1.0});
  if (name == "z2_plus_cubic") return polynomial_solution(name, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 1.0});
  if (name == "exp_half") return exponential_solution(name, 1.0, 0.5);
  if (name == "exp") return exponential_solution(name, 1.0, 1.0);
  throw ConfigurationError("solution: unknown name '" + name + "'");
}

inline std::vector<SolutionSpec> canonical_set() {
  std::vector<SolutionSpec> v;
  for (const auto& n : canonical_names()) v.push_back(solution_by_name(n));
  return v;
}

inline BoundaryTrace make_trace(const SolutionSpec& s, const PlaneDomain& d, const QuadratureRule& rule) {
  BoundaryTrace t;
  t.rule = rule;
  std::size_t n = rule.size();
  std::vector<cplx> u[2], du[2], dt[2];
  for (int side = 0; side < 2; ++side) {
    u[side].resize(n);
    du[side].resize(n);
    dt[side].resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      double x1 = rule.nodes[m];
      double x2 = eval_curve(d, static_cast<Side>(side), x1).first;
      SolutionValue v = eval_solution(s, x1, x2);
      u[side][m] = v.u;
      du[side][m] = v.du_dx2;
      dt[side][m] = v.du_dx1;
    }
  }
  t.u_lower = std::move(u[0]);
  t.u_upper = std::move(u[1]);
  t.du_lower = std::move(du[0]);
  t.du_upper = std::move(du[1]);
  t.dt_lower = std::move(dt[0]);
  t.dt_upper = std::move(dt[1]);
  return t;
}

struct ManufacturedBC {
  BCSpec bc;
  std::vector<cplx> phi1_nodes, phi2_nodes;
  EndpointReport endpoints;
};

// phi_k(x1) = du/dx2 + alpha_k u at (x1, gamma_k(x1)).
inline ManufacturedBC make_bc(const SolutionSpec& s, const PlaneDomain& d, cplx alpha1, cplx alpha2,
                              const QuadratureRule& rule) {
  ManufacturedBC out;
  out.bc.alpha1 = alpha1;
  out.bc.alpha2 = alpha2;
  auto phi = [s, d](Side side, cplx alpha) {
    return [s, d, side, alpha](double x1) {
      double x2 = eval_curve(d, side, x1).first;
      SolutionValue v = eval_solution(s, x1, x2);
      return v.du_dx2 + alpha * v.u;
    };
  };
  out.bc.phi1 = phi(Side::lower, alpha1);
  out.bc.phi2 = phi(Side::upper, alpha2);
  out.phi1_nodes = sample(out.bc.phi1, rule);
  out.phi2_nodes = sample(out.bc.phi2, rule);
  // endpoint values use the closed form directly; curve slopes may be unbounded there
  auto at_end = [&](Side side, cplx alpha, double x1) {
    double x2 = d.curve(side).eval(x1).value;
    SolutionValue v = eval_solution(s, x1, x2);
    return std::abs(v.du_dx2 + alpha * v.u);
  };
  out.endpoints.phi1_a = at_end(Side::lower, alpha1, d.a1);
  out.endpoints.phi1_b = at_end(Side::lower, alpha1, d.b1);
  out.endpoints.phi2_a = at_end(Side::upper, alpha2, d.a1);
  out.endpoints.phi2_b = at_end(Side::upper, alpha2, d.b1);
  return out;
}

struct Point2 {
  double x1;
  double x2;
};

// max |u_22 + i u_12| with second-order central differences.
inline double pde_residual_check(const SolutionSpec& s, const std::vector<Point2>& points, double h) {
  if (!(h > 0)) throw ConfigurationError("h: step must be positive");
  double worst = 0;
  auto u = [&](double a, double b) { return eval_solution(s, a, b).u; };
  for (const auto& p : points) {
    cplx u22 = (u(p.x1, p.x2 + h) - 2.0 * u(p.x1, p.x2) + u(p.x1, p.x2 - h)) / (h * h);
    cplx u12 = (u(p.x1 + h, p.x2 + h) - u(p.x1 + h, p.x2 - h) - u(p.x1 - h, p.x2 + h) + u(p.x1 - h, p.x2 - h)) /
               (4 * h * h);
    worst = std::max(worst, std::abs(u22 + I_unit * u12));
  }
  return worst;
}

}  // namespace cbie
