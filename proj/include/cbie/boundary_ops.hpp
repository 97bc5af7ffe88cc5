#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace cbie {

// Curve samples and product-integration weights shared by the boundary
// operators. Requires a gauss-legendre rule on [a1, b1].
class BoundaryGrid {
 public:
  BoundaryGrid(const PlaneDomain& domain, const QuadratureRule& rule) : domain_(domain), pw_(rule) {
    if (rule.a != domain.a1 || rule.b != domain.b1) throw ConfigurationError("rule: interval differs from [a1, b1]");
    for (int s = 0; s < 2; ++s) {
      curve_[s].resize(rule.size());
      for (std::size_t m = 0; m < rule.size(); ++m) {
        CurvePoint p = domain.curve(static_cast<Side>(s)).eval(rule.nodes[m]);
        if (!std::isfinite(p.value) || !std::isfinite(p.slope) || !std::isfinite(p.curvature))
          throw GeometryError("curve not finite at node x1 = " + std::to_string(rule.nodes[m]));
        curve_[s][m] = p;
      }
    }
    for (std::size_t m = 0; m < rule.size(); ++m)
      if (!(curve_[0][m].value < curve_[1][m].value))
        throw GeometryError("gamma_1 >= gamma_2 at node x1 = " + std::to_string(rule.nodes[m]));
  }

  const PlaneDomain& domain() const { return domain_; }
  const QuadratureRule& rule() const { return pw_.rule(); }
  const ProductWeights& product() const { return pw_; }
  std::size_t size() const { return rule().size(); }
  const CurvePoint& curve(int side, std::size_t m) const { return curve_[side][m]; }

  // Curve data at xi; node >= 0 means xi is that node.
  CurvePoint curve_at(int side, double xi, int node) const {
    if (node >= 0) return curve_[side][node];
    return eval_curve_full(domain_, static_cast<Side>(side), xi);
  }

 private:
  PlaneDomain domain_;
  ProductWeights pw_;
  std::array<std::vector<CurvePoint>, 2> curve_;
};

// Height p(x) = gamma_curve(x) - c, or p(x) = -c when curve < 0. The kernels
// below see p(x) + i (x - xi).
struct Height {
  int curve;
  double c;
};

// Target of a boundary operator row: xi1 with its product weights.
struct Target {
  double xi;
  int node;  // -1 when xi is not a node
  const SingularWeights* sw;
};

namespace detail {

struct HeightData {
  double p0, p1, p2;  // p(xi), p'(xi), p''(xi)
};

inline HeightData height_at(const BoundaryGrid& g, const Target& t, const Height& h) {
  if (h.curve < 0) return {-h.c, 0, 0};
  CurvePoint cp = g.curve_at(h.curve, t.xi, t.node);
  return {cp.value - h.c, cp.slope, cp.curvature};
}

inline double height_node(const BoundaryGrid& g, const Height& h, std::size_t m) {
  return h.curve < 0 ? -h.c : g.curve(h.curve, m).value - h.c;
}

// Mean-value slope (p(x_m) - p(xi)) / (x_m - xi) when p(xi) = 0.
inline double secant(const BoundaryGrid& g, const Target& t, const Height& h, const HeightData& hd, std::size_t m) {
  if (static_cast<int>(m) == t.node) return hd.p1;
  return height_node(g, h, m) / (g.rule().nodes[m] - t.xi);
}

// Root of p(xi) + (p'(xi) + i) d + p''(xi) d^2 / 2 nearest zero, shifted by xi.
inline cplx complex_root(double xi, const HeightData& hd) {
  cplx b(hd.p1, 1.0);
  double a2 = 0.5 * hd.p2;
  cplx disc = std::sqrt(b * b - 4.0 * a2 * hd.p0);
  cplx q1 = -0.5 * (b + disc), q2 = -0.5 * (b - disc);
  cplx q = std::abs(q1) >= std::abs(q2) ? q1 : q2;
  return xi + hd.p0 / q;
}

}  // namespace detail

// Weights for int f(x) (1/2pi) log(p(x) + i (x - xi)) dx, principal branch.
inline std::vector<cplx> log_kernel_weights(const BoundaryGrid& g, const Target& t, const Height& h) {
  const QuadratureRule& r = g.rule();
  const SingularWeights& sw = *t.sw;
  detail::HeightData hd = detail::height_at(g, t, h);
  std::size_t n = r.size();
  std::vector<cplx> w(n);
  constexpr double pi = std::numbers::pi;
  if (hd.p0 == 0) {
    // log((x - xi)(q + i)) = log|x - xi| + log(q + i) - i pi H(xi - x)
    for (std::size_t m = 0; m < n; ++m) {
      double q = detail::secant(g, t, h, hd, m);
      w[m] = r.weights[m] * std::log(cplx(q, 1.0)) + sw.log[m] - I_unit * pi * sw.step[m];
    }
  } else if (hd.p0 > 0) {
    for (std::size_t m = 0; m < n; ++m)
      w[m] = r.weights[m] * std::log(cplx(detail::height_node(g, h, m), r.nodes[m] - t.xi));
  } else {
    // log(w) = log(-w) + i pi - 2 pi i H(xi - x), smooth on both sides
    for (std::size_t m = 0; m < n; ++m) {
      cplx z(detail::height_node(g, h, m), r.nodes[m] - t.xi);
      w[m] = r.weights[m] * (std::log(-z) + I_unit * pi) - 2.0 * pi * I_unit * sw.step[m];
    }
  }
  for (auto& v : w) v /= two_pi;
  return w;
}

// Weights for int f(x) (1/2pi) / (p(x) + i (x - xi)) dx; principal value when
// p(xi) = 0, near-singular correction when the pole approaches [a1, b1].
inline std::vector<cplx> cauchy_kernel_weights(const BoundaryGrid& g, const Target& t, const Height& h) {
  const QuadratureRule& r = g.rule();
  detail::HeightData hd = detail::height_at(g, t, h);
  std::size_t n = r.size();
  std::vector<cplx> w(n);
  if (hd.p0 == 0) {
    const SingularWeights& sw = *t.sw;
    for (std::size_t m = 0; m < n; ++m) w[m] = sw.pv[m] / (two_pi * cplx(detail::secant(g, t, h, hd, m), 1.0));
    return w;
  }
  cplx root = detail::complex_root(t.xi, hd);
  if (g.product().near(root)) {
    std::vector<cplx> cw = g.product().cauchy_offaxis(root);
    for (std::size_t m = 0; m < n; ++m) {
      cplx hm(detail::height_node(g, h, m), r.nodes[m] - t.xi);
      w[m] = cw[m] * (r.nodes[m] - root) / (two_pi * hm);
    }
    return w;
  }
  for (std::size_t m = 0; m < n; ++m) {
    cplx hm(detail::height_node(g, h, m), r.nodes[m] - t.xi);
    w[m] = r.weights[m] / (two_pi * hm);
  }
  return w;
}

inline double curve_sign(int side) { return side == 1 ? 1.0 : -1.0; }

// 1 - i gamma_j'(x_m)
inline cplx arc_factor(const BoundaryGrid& g, int side, std::size_t m) { return cplx(1.0, -g.curve(side, m).slope); }

}  // namespace cbie
