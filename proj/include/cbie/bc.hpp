#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace cbie {

// du/dx2 + alpha_k u = phi_k on gamma_k.
struct BCSpec {
  cplx alpha1 = 1;
  cplx alpha2 = 2;
  Evaluable phi1;
  Evaluable phi2;

  cplx alpha(int side) const { return side == 0 ? alpha1 : alpha2; }
  const Evaluable& phi(int side) const { return side == 0 ? phi1 : phi2; }
};

struct EndpointReport {
  double phi1_a = 0, phi1_b = 0, phi2_a = 0, phi2_b = 0;  // |phi_k| at a1, b1
  double tolerance = 1e-12;

  bool vanishes() const {
    return phi1_a <= tolerance && phi1_b <= tolerance && phi2_a <= tolerance && phi2_b <= tolerance;
  }
  std::string warning() const {
    if (vanishes()) return "";
    return "boundary data do not vanish at the interval ends; accuracy is measured on the interior window";
  }
};

inline EndpointReport endpoint_report(const BCSpec& bc, double a, double b, double tolerance = 1e-12) {
  EndpointReport r;
  r.tolerance = tolerance;
  r.phi1_a = std::abs(bc.phi1(a));
  r.phi1_b = std::abs(bc.phi1(b));
  r.phi2_a = std::abs(bc.phi2(a));
  r.phi2_b = std::abs(bc.phi2(b));
  return r;
}

inline std::vector<cplx> sample(const Evaluable& f, const QuadratureRule& rule) {
  std::vector<cplx> s(rule.size());
  for (std::size_t m = 0; m < rule.size(); ++m) s[m] = f(rule.nodes[m]);
  return s;
}

inline void validate_bc(const BCSpec& bc) {
  if (bc.alpha1 == 0.0) throw ConfigurationError("alpha1: must be nonzero");
  if (bc.alpha2 == 0.0) throw ConfigurationError("alpha2: must be nonzero");
  if (!bc.phi1 || !bc.phi2) throw ConfigurationError("phi: boundary data missing");
}

// Eliminated normal-type derivative phi - alpha u.
inline std::vector<cplx> du_from_bc(const std::vector<cplx>& u, cplx alpha, const std::vector<cplx>& phi) {
  if (u.size() != phi.size()) throw ShapeError("du_from_bc: trace and data lengths differ");
  std::vector<cplx> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = phi[i] - alpha * u[i];
  return v;
}

}  // namespace cbie
