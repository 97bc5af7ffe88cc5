#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "error.hpp"

namespace cbie {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2 * std::numbers::pi;
inline constexpr cplx I_unit{0.0, 1.0};

inline double heaviside_sym(double t) { return t > 0 ? 1.0 : (t < 0 ? 0.0 : 0.5); }

// d1 = x1 - xi1. U integrates dt / (t - xi2 + i d1) over t in [0, x2].
struct KernelPoint {
  double d1;
  double x2;
  double xi2;
};

inline bool is_singular(const KernelPoint& p) {
  return p.d1 == 0 && p.xi2 >= std::min(0.0, p.x2) && p.xi2 <= std::max(0.0, p.x2);
}

inline bool is_singular_derivative(double d1, double d2) { return d1 == 0 && d2 == 0; }

namespace detail {
inline std::string point_text(const KernelPoint& p) {
  return "(d1=" + std::to_string(p.d1) + ", x2=" + std::to_string(p.x2) + ", xi2=" + std::to_string(p.xi2) + ")";
}
inline void require_regular(const KernelPoint& p, const char* op) {
  if (!std::isfinite(p.d1) || !std::isfinite(p.x2) || !std::isfinite(p.xi2))
    throw NumericError(std::string(op) + ": non-finite kernel point");
  if (is_singular(p))
    throw KernelSingularityError(std::string(op) + ": singular kernel point " + point_text(p), p.d1, p.x2, p.xi2);
}
}  // namespace detail

inline cplx fund_solution(const KernelPoint& p) {
  detail::require_regular(p, "fund_solution");
  if (p.d1 != 0) return (std::log(cplx(p.x2 - p.xi2, p.d1)) - std::log(cplx(-p.xi2, p.d1))) / two_pi;
  return (std::log(std::abs(p.x2 - p.xi2)) - std::log(std::abs(p.xi2))) / two_pi;
}

// d2 = x2 - xi2.
inline cplx dU_dx2(double d1, double d2) {
  if (is_singular_derivative(d1, d2))
    throw KernelSingularityError("dU_dx2: singular at d1 = d2 = 0", d1, d2, 0.0);
  return 1.0 / (two_pi * cplx(d2, d1));
}

inline cplx dU_dx1(const KernelPoint& p) {
  detail::require_regular(p, "dU_dx1");
  return I_unit / two_pi * (1.0 / cplx(p.x2 - p.xi2, p.d1) - 1.0 / cplx(-p.xi2, p.d1));
}

// Closed-form second derivatives; their combination U_22 + i U_12 vanishes.
inline cplx d2U_dx2dx2(double d1, double d2) {
  if (is_singular_derivative(d1, d2)) throw KernelSingularityError("d2U_dx2dx2: singular", d1, d2, 0.0);
  cplx z(d2, d1);
  return -1.0 / (two_pi * z * z);
}

inline cplx d2U_dx1dx2(double d1, double d2) {
  if (is_singular_derivative(d1, d2)) throw KernelSingularityError("d2U_dx1dx2: singular", d1, d2, 0.0);
  cplx z(d2, d1);
  return -I_unit / (two_pi * z * z);
}

// dU/dx2 + i dU/dx1; independent of x2.
inline cplx cauchy_riemann_combination(double d1, double xi2) {
  if (d1 == 0 && xi2 == 0) throw KernelSingularityError("cauchy_riemann_combination: singular", d1, 0.0, xi2);
  return 1.0 / (two_pi * cplx(-xi2, d1));
}

}  // namespace cbie
