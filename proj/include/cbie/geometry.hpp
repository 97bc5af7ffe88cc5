#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace cbie {

enum class CurveKind { lens, ellipse_graph, polynomial, tabulated };
enum class Side { lower = 0, upper = 1 };

inline const char* to_string(CurveKind k) {
  switch (k) {
    case CurveKind::lens: return "lens";
    case CurveKind::ellipse_graph: return "ellipse-graph";
    case CurveKind::polynomial: return "polynomial";
    case CurveKind::tabulated: return "tabulated";
  }
  return "?";
}

inline CurveKind curve_kind_from_string(const std::string& s) {
  if (s == "lens") return CurveKind::lens;
  if (s == "ellipse-graph" || s == "ellipse") return CurveKind::ellipse_graph;
  if (s == "polynomial") return CurveKind::polynomial;
  if (s == "tabulated") return CurveKind::tabulated;
  throw ConfigurationError("unknown curve kind '" + s + "'");
}

struct CurvePoint {
  double value;
  double slope;
  double curvature;  // second derivative
};

// Graph x1 -> gamma(x1).
//   lens           params [s] or [s, c, r]: s * (1 - ((x - c)/r)^2)
//   ellipse-graph  params [s] or [s, c, r]: s * sqrt(1 - ((x - c)/r)^2)
//   polynomial     params: ascending coefficients
//   tabulated      params: x0, y0, x1, y1, ... ; monotone cubic (PCHIP)
class CurveDescriptor {
 public:
  CurveDescriptor() : CurveDescriptor(CurveKind::polynomial, {0.0}) {}

  CurveDescriptor(CurveKind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {
    switch (kind_) {
      case CurveKind::lens:
      case CurveKind::ellipse_graph:
        if (params_.size() != 1 && params_.size() != 3)
          throw ConfigurationError("params: lens/ellipse-graph expects [s] or [s, c, r]");
        if (params_.size() == 1) params_ = {params_[0], 0.0, 1.0};
        if (!(params_[2] > 0)) throw ConfigurationError("params: half-width r must be positive");
        break;
      case CurveKind::polynomial:
        if (params_.empty()) throw ConfigurationError("params: polynomial needs coefficients");
        break;
      case CurveKind::tabulated: build_table(); break;
    }
    for (double p : params_)
      if (!std::isfinite(p)) throw ConfigurationError("params: non-finite entry");
  }

  static CurveDescriptor lens(double s) { return {CurveKind::lens, {s}}; }
  static CurveDescriptor ellipse(double s) { return {CurveKind::ellipse_graph, {s}}; }
  static CurveDescriptor polynomial(std::vector<double> c) { return {CurveKind::polynomial, std::move(c)}; }
  static CurveDescriptor tabulated(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw ShapeError("tabulated curve: x and y lengths differ");
    std::vector<double> p;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      p.push_back(xs[i]);
      p.push_back(ys[i]);
    }
    return {CurveKind::tabulated, std::move(p)};
  }

  CurveKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

  // Table extent for tabulated curves; infinite otherwise.
  double table_min() const { return xs_.empty() ? -std::numeric_limits<double>::infinity() : xs_.front(); }
  double table_max() const { return xs_.empty() ? std::numeric_limits<double>::infinity() : xs_.back(); }

  CurvePoint eval(double x) const {
    switch (kind_) {
      case CurveKind::lens: {
        double s = params_[0], c = params_[1], r = params_[2];
        double t = (x - c) / r;
        return {s * (1 - t * t), -2 * s * t / r, -2 * s / (r * r)};
      }
      case CurveKind::ellipse_graph: {
        double s = params_[0], c = params_[1], r = params_[2];
        double t = (x - c) / r;
        double q = 1 - t * t;
        double rt = std::sqrt(q);
        double nan = std::numeric_limits<double>::quiet_NaN();
        if (q < 0) return {nan, nan, nan};
        return {s * rt, -s * t / (r * rt), -s / (r * r * q * rt)};
      }
      case CurveKind::polynomial: {
        double v = 0, d = 0, dd = 0;
        for (std::size_t k = params_.size(); k-- > 0;) {
          dd = dd * x + 2 * d;
          d = d * x + v;
          v = v * x + params_[k];
        }
        return {v, d, dd};
      }
      case CurveKind::tabulated: return eval_table(x);
    }
    return {0, 0, 0};
  }

 private:
  void build_table() {
    if (params_.size() < 4 || params_.size() % 2 != 0)
      throw ConfigurationError("params: tabulated curve needs at least two (x, y) pairs");
    std::size_t n = params_.size() / 2;
    xs_.resize(n);
    ys_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs_[i] = params_[2 * i];
      ys_[i] = params_[2 * i + 1];
    }
    for (std::size_t i = 1; i < n; ++i)
      if (!(xs_[i] > xs_[i - 1])) throw ConfigurationError("params: tabulated x values must increase strictly");
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = xs_[i + 1] - xs_[i];
      del[i] = (ys_[i + 1] - ys_[i]) / h[i];
    }
    ds_.assign(n, 0.0);
    if (n == 2) {
      ds_[0] = ds_[1] = del[0];
      return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (del[k - 1] * del[k] <= 0) continue;
      double w1 = 2 * h[k] + h[k - 1], w2 = h[k] + 2 * h[k - 1];
      ds_[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
    }
    auto edge = [](double h0, double h1, double d0, double d1) {
      double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (d * d0 <= 0) return 0.0;
      if (d0 * d1 < 0 && std::abs(d) > 3 * std::abs(d0)) return 3 * d0;
      return d;
    };
    ds_[0] = edge(h[0], h[1], del[0], del[1]);
    ds_[n - 1] = edge(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
  }

  CurvePoint eval_table(double x) const {
    std::size_t n = xs_.size();
    std::size_t k = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
    double h = xs_[k + 1] - xs_[k];
    double t = (x - xs_[k]) / h;
    double y0 = ys_[k], y1 = ys_[k + 1], m0 = ds_[k] * h, m1 = ds_[k + 1] * h;
    double t2 = t * t, t3 = t2 * t;
    double v = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
    double d = (6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1;
    double dd = (12 * t - 6) * y0 + (6 * t - 4) * m0 + (-12 * t + 6) * y1 + (6 * t - 2) * m1;
    return {v, d / h, dd / (h * h)};
  }

  CurveKind kind_;
  std::vector<double> params_;
  std::vector<double> xs_, ys_, ds_;
};

struct PlaneDomain {
  double a1 = -1;
  double b1 = 1;
  CurveDescriptor lower;
  CurveDescriptor upper;

  const CurveDescriptor& curve(Side s) const { return s == Side::lower ? lower : upper; }
};

inline PlaneDomain make_domain(double a1, double b1, CurveDescriptor lower, CurveDescriptor upper) {
  if (!(std::isfinite(a1) && std::isfinite(b1) && a1 < b1)) throw ConfigurationError("a1/b1: need finite a1 < b1");
  for (const auto* c : {&lower, &upper})
    if (c->table_min() > a1 || c->table_max() < b1)
      throw ConfigurationError("params: tabulated curve does not cover [a1, b1]");
  return PlaneDomain{a1, b1, std::move(lower), std::move(upper)};
}

// gamma_2 = 1 - x^2, gamma_1 = -(1 - x^2) on [-1, 1].
inline PlaneDomain lens_domain() { return make_domain(-1, 1, CurveDescriptor::lens(-1), CurveDescriptor::lens(1)); }

// Unit disc as two graphs.
inline PlaneDomain ellipse_domain() {
  return make_domain(-1, 1, CurveDescriptor::ellipse(-1), CurveDescriptor::ellipse(1));
}

inline CurvePoint eval_curve_full(const PlaneDomain& d, Side side, double x1) {
  if (!(x1 >= d.a1 && x1 <= d.b1)) throw DomainError("eval_curve: x1 = " + std::to_string(x1) + " outside [a1, b1]");
  CurvePoint p = d.curve(side).eval(x1);
  if (!std::isfinite(p.value) || !std::isfinite(p.slope))
    throw GeometryError("eval_curve: non-finite curve value at x1 = " + std::to_string(x1));
  return p;
}

inline std::pair<double, double> eval_curve(const PlaneDomain& d, Side side, double x1) {
  CurvePoint p = eval_curve_full(d, side, x1);
  return {p.value, p.slope};
}

struct ValidationReport {
  std::vector<double> order_violations;  // interior x1 with gamma_1 >= gamma_2
  std::vector<double> nonfinite_points;  // x1 where a value or slope is not finite
  double max_abs_slope = 0;
  double max_slope_at = 0;

  bool valid() const { return order_violations.empty(); }
  bool slopes_bounded() const { return nonfinite_points.empty(); }
};

// Probes are uniform over the closed interval, endpoints included.
inline ValidationReport validate_domain(const PlaneDomain& d, int probes) {
  if (probes < 2) throw ConfigurationError("probes: need at least 2");
  ValidationReport r;
  for (int p = 0; p < probes; ++p) {
    double x = p == probes - 1 ? d.b1 : d.a1 + (d.b1 - d.a1) * p / (probes - 1);
    CurvePoint lo = d.lower.eval(x), up = d.upper.eval(x);
    bool finite = std::isfinite(lo.value) && std::isfinite(up.value) && std::isfinite(lo.slope) &&
                  std::isfinite(up.slope);
    if (!finite) {
      r.nonfinite_points.push_back(x);
    } else {
      for (double s : {std::abs(lo.slope), std::abs(up.slope)})
        if (s > r.max_abs_slope) {
          r.max_abs_slope = s;
          r.max_slope_at = x;
        }
    }
    bool interior = p > 0 && p < probes - 1;
    if (interior && !(lo.value < up.value)) r.order_violations.push_back(x);
  }
  return r;
}

}  // namespace cbie
