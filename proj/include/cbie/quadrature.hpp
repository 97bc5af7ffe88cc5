#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"

namespace cbie {

enum class RuleFamily { gauss_legendre, midpoint_uniform };

inline const char* to_string(RuleFamily f) {
  return f == RuleFamily::gauss_legendre ? "gauss-legendre" : "midpoint-uniform";
}

inline RuleFamily rule_family_from_string(const std::string& s) {
  if (s == "gauss-legendre") return RuleFamily::gauss_legendre;
  if (s == "midpoint-uniform") return RuleFamily::midpoint_uniform;
  throw ConfigurationError("family: unknown rule family '" + s + "'");
}

struct QuadratureRule {
  RuleFamily family = RuleFamily::gauss_legendre;
  double a = -1;
  double b = 1;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> ref_nodes;  // nodes mapped back to [-1, 1]

  std::size_t size() const { return nodes.size(); }
  double half_length() const { return 0.5 * (b - a); }
  double center() const { return 0.5 * (a + b); }
  double to_ref(double x) const { return (x - center()) / half_length(); }
};

namespace detail {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
inline void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1, p1 = x;
  if (n == 0) {
    p = 1;
    dp = 0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1);
}

inline void gauss_legendre_ref(int n, std::vector<double>& t, std::vector<double>& w) {
  t.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0, dp = 1;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_pair(n, x, p, dp);
    t[n - 1 - i] = x;
    t[i] = -x;
    w[i] = w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  if (n % 2 == 1) t[n / 2] = 0;
}

}  // namespace detail

inline QuadratureRule build_rule(RuleFamily family, int n, double a, double b) {
  if (n < 2) throw ConfigurationError("N: rule needs at least 2 nodes");
  if (!(a < b)) throw ConfigurationError("interval: need a < b");
  QuadratureRule r;
  r.family = family;
  r.a = a;
  r.b = b;
  double h = r.half_length(), c = r.center();
  std::vector<double> t, w;
  if (family == RuleFamily::gauss_legendre) {
    detail::gauss_legendre_ref(n, t, w);
  } else {
    t.resize(n);
    w.assign(n, 2.0 / n);
    for (int i = 0; i < n; ++i) t[i] = -1 + (2.0 * i + 1) / n;
  }
  r.ref_nodes = t;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * t[i];
    r.weights[i] = h * w[i];
  }
  return r;
}

inline QuadratureRule gauss_rule(int n, double a, double b) { return build_rule(RuleFamily::gauss_legendre, n, a, b); }

template <class T>
cplx integrate(const std::vector<T>& samples, const QuadratureRule& rule) {
  if (samples.size() != rule.size()) throw ShapeError("integrate: sample count does not match rule");
  cplx s = 0;
  for (std::size_t j = 0; j < samples.size(); ++j) s += rule.weights[j] * cplx(samples[j]);
  return s;
}

using Evaluable = std::function<cplx(double)>;

namespace detail {
inline void require_inside(const QuadratureRule& rule, double xi) {
  if (!(xi > rule.a && xi < rule.b)) throw DomainError("pv_integrate: xi must lie strictly inside (a, b)");
}
inline int node_index(const QuadratureRule& rule, double xi) {
  for (std::size_t j = 0; j < rule.size(); ++j)
    if (rule.nodes[j] == xi) return static_cast<int>(j);
  return -1;
}
}  // namespace detail

// PV of f(x)/(x - xi) by subtracting f(xi). When xi is a node the regular
// integrand there is f'(xi), which must then be supplied.
inline cplx pv_integrate(const Evaluable& f, const Evaluable& df, double xi, const QuadratureRule& rule) {
  detail::require_inside(rule, xi);
  cplx fxi = f(xi);
  cplx s = 0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    double x = rule.nodes[j];
    cplx g;
    if (x == xi) {
      if (!df) throw DataError("pv_integrate: xi is a node; derivative of f required");
      g = df(xi);
    } else {
      g = (f(x) - fxi) / (x - xi);
    }
    s += rule.weights[j] * g;
  }
  return s + fxi * std::log((rule.b - xi) / (xi - rule.a));
}

inline cplx pv_integrate(const Evaluable& f, double xi, const QuadratureRule& rule) {
  return pv_integrate(f, Evaluable{}, xi, rule);
}

// Weight vectors at a target tau in (a, b), exact for f in P_{N-1}:
//   sum pv_j f_j   = PV int f(x) / (x - tau) dx
//   sum log_j f_j  = int f(x) log|x - tau| dx
//   sum step_j f_j = int_a^tau f(x) dx
struct SingularWeights {
  std::vector<double> pv;
  std::vector<double> log;
  std::vector<double> step;
};

// Product integration against the Legendre interpolant at Gauss nodes.
class ProductWeights {
 public:
  explicit ProductWeights(const QuadratureRule& rule) : rule_(rule), n_(static_cast<int>(rule.size())) {
    if (rule.family != RuleFamily::gauss_legendre)
      throw ConfigurationError("family: singular product weights need a gauss-legendre rule");
    basis_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    double h = rule.half_length();
    for (int j = 0; j < n_; ++j) {
      double t = rule.ref_nodes[j], wr = rule.weights[j] / h;
      double p0 = 1, p1 = t;
      for (int k = 0; k < n_; ++k) {
        double pk = k == 0 ? 1.0 : p1;
        if (k >= 2) {
          double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
          pk = p2;
        }
        basis_[static_cast<std::size_t>(k) * n_ + j] = (2 * k + 1) / 2.0 * pk * wr;
      }
    }
    lambda_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      double t = rule.ref_nodes[j];
      lambda_[j] = ((j % 2) ? -1.0 : 1.0) * std::sqrt((1 - t * t) * rule.weights[j] / h);
    }
  }

  const QuadratureRule& rule() const { return rule_; }

  SingularWeights at(double tau) const {
    const QuadratureRule& r = rule_;
    if (!(tau > r.a && tau < r.b)) throw DomainError("product weights: target outside (a, b)");
    double t = r.to_ref(tau);
    int n = n_;
    std::vector<double> q(n + 1), p(n + 1), mlog(n), mstep(n);
    q[0] = std::log((1 - t) / (1 + t));
    q[1] = 2 + t * q[0];
    for (int k = 1; k < n; ++k) q[k + 1] = ((2 * k + 1) * t * q[k] - k * q[k - 1]) / (k + 1);
    p[0] = 1;
    p[1] = t;
    for (int k = 1; k < n; ++k) p[k + 1] = ((2 * k + 1) * t * p[k] - k * p[k - 1]) / (k + 1);
    mlog[0] = (1 - t) * std::log(1 - t) + (1 + t) * std::log(1 + t) - 2;
    mstep[0] = t + 1;
    for (int k = 1; k < n; ++k) {
      mlog[k] = -(q[k + 1] - q[k - 1]) / (2 * k + 1);
      mstep[k] = (p[k + 1] - p[k - 1]) / (2 * k + 1);
    }
    SingularWeights w;
    w.pv.assign(n, 0.0);
    w.log.assign(n, 0.0);
    w.step.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
      const double* row = &basis_[static_cast<std::size_t>(k) * n];
      for (int j = 0; j < n; ++j) {
        w.pv[j] += row[j] * q[k];
        w.log[j] += row[j] * mlog[k];
        w.step[j] += row[j] * mstep[k];
      }
    }
    double h = r.half_length(), logh = std::log(h);
    for (int j = 0; j < n; ++j) {
      w.log[j] = r.weights[j] * logh + h * w.log[j];
      w.step[j] *= h;
    }
    return w;
  }

  // Barycentric basis values l_j(z) of the interpolant through the nodes.
  std::vector<cplx> basis_values(cplx z) const {
    const QuadratureRule& r = rule_;
    cplx zr = (z - r.center()) / r.half_length();
    std::vector<cplx> l(n_);
    cplx sum = 0;
    for (int j = 0; j < n_; ++j) {
      cplx d = zr - r.ref_nodes[j];
      if (d == 0.0) {
        std::fill(l.begin(), l.end(), 0.0);
        l[j] = 1;
        return l;
      }
      l[j] = lambda_[j] / d;
      sum += l[j];
    }
    for (auto& v : l) v /= sum;
    return l;
  }

  template <class T>
  cplx interpolate(const std::vector<T>& samples, cplx z) const {
    if (samples.size() != static_cast<std::size_t>(n_)) throw ShapeError("interpolate: sample count does not match rule");
    auto l = basis_values(z);
    cplx s = 0;
    for (int j = 0; j < n_; ++j) s += l[j] * cplx(samples[j]);
    return s;
  }

  // True when the plain rule loses accuracy on 1/(x - z): z lies inside the
  // Bernstein ellipse with rho^N below 1e6.
  bool near(cplx z) const {
    const QuadratureRule& r = rule_;
    cplx zr = (z - r.center()) / r.half_length();
    cplx rho = zr + std::sqrt(zr - 1.0) * std::sqrt(zr + 1.0);
    double m = std::abs(rho);
    if (m < 1) m = 1 / m;
    return n_ * std::log(m) < std::log(1e6);
  }

  // Weights W_j with sum W_j f_j ~ int f(x) / (x - z) dx for z off [a, b].
  // The plain rule is corrected by the interpolant times its own error on
  // 1/(x - z), which recovers polynomial exactness near the interval.
  std::vector<cplx> cauchy_offaxis(cplx z) const {
    const QuadratureRule& r = rule_;
    double h = r.half_length();
    cplx zr = (z - r.center()) / h;
    if (zr.imag() == 0 && zr.real() >= -1 && zr.real() <= 1)
      throw DomainError("cauchy_offaxis: target on the integration interval");
    std::vector<cplx> w(n_);
    cplx plain = 0;
    for (int j = 0; j < n_; ++j) {
      w[j] = (r.weights[j] / h) / (r.ref_nodes[j] - zr);
      plain += w[j];
    }
    cplx exact = std::log(1.0 - zr) - std::log(-1.0 - zr);
    auto l = basis_values(z);
    for (int j = 0; j < n_; ++j) w[j] += l[j] * (exact - plain);
    return w;
  }

 private:
  QuadratureRule rule_;
  int n_;
  std::vector<double> basis_;  // (2k+1)/2 P_k(t_j) w_j, row k
  std::vector<double> lambda_;
};

}  // namespace cbie
