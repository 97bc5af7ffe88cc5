#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace cbie {

// Samples of u and du/dx2 (and optionally du/dx1) on both curves at the rule
// nodes. Index 0 is gamma_1 (lower), index 1 is gamma_2 (upper).
struct BoundaryTrace {
  QuadratureRule rule;
  std::vector<cplx> u_lower, u_upper;
  std::vector<cplx> du_lower, du_upper;
  std::optional<std::vector<cplx>> dt_lower, dt_upper;  // du/dx1

  const std::vector<cplx>& u(int side) const { return side == 0 ? u_lower : u_upper; }
  const std::vector<cplx>& du(int side) const { return side == 0 ? du_lower : du_upper; }
  bool has_tangential() const { return dt_lower.has_value() && dt_upper.has_value(); }
  const std::vector<cplx>& dt(int side) const {
    if (!has_tangential()) throw DataError("trace: tangential derivative du/dx1 not provided");
    return side == 0 ? *dt_lower : *dt_upper;
  }

  void validate() const {
    std::size_t n = rule.size();
    for (const auto* v : {&u_lower, &u_upper, &du_lower, &du_upper})
      if (v->size() != n) throw ShapeError("trace: sample count does not match rule");
    for (const auto& o : {dt_lower, dt_upper})
      if (o && o->size() != n) throw ShapeError("trace: tangential sample count does not match rule");
    auto finite = [](const std::vector<cplx>& v) {
      for (auto z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
      return true;
    };
    for (const auto* v : {&u_lower, &u_upper, &du_lower, &du_upper})
      if (!finite(*v)) throw DataError("trace: non-finite sample");
  }

  BoundaryTrace operator+(const BoundaryTrace& o) const {
    if (o.rule.nodes != rule.nodes) throw ShapeError("trace: rules differ");
    BoundaryTrace r = *this;
    auto add = [](std::vector<cplx>& a, const std::vector<cplx>& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    };
    add(r.u_lower, o.u_lower);
    add(r.u_upper, o.u_upper);
    add(r.du_lower, o.du_lower);
    add(r.du_upper, o.du_upper);
    if (r.has_tangential() && o.has_tangential()) {
      add(*r.dt_lower, *o.dt_lower);
      add(*r.dt_upper, *o.dt_upper);
    } else {
      r.dt_lower.reset();
      r.dt_upper.reset();
    }
    return r;
  }
};

}  // namespace cbie
