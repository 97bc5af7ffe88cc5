#include "cli/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>

namespace cbie::cli {

cplx fund_solution_quadrature(const KernelPoint& p) {
  using boost::math::quadrature::gauss_kronrod;
  auto re = [&](double t) { return std::real(1.0 / cplx(t - p.xi2, p.d1)); };
  auto im = [&](double t) { return std::imag(1.0 / cplx(t - p.xi2, p.d1)); };
  // split at the peak so the adaptive scheme sees it on an edge
  std::vector<double> cuts{0.0};
  if (p.xi2 > std::min(0.0, p.x2) && p.xi2 < std::max(0.0, p.x2)) cuts.push_back(p.xi2);
  cuts.push_back(p.x2);
  double sr = 0, si = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    sr += gauss_kronrod<double, 61>::integrate(re, cuts[k], cuts[k + 1], 15, 1e-13);
    si += gauss_kronrod<double, 61>::integrate(im, cuts[k], cuts[k + 1], 15, 1e-13);
  }
  return cplx(sr, si) / two_pi;
}

std::vector<KernelPoint> kernel_probe_points(std::uint64_t seed, int count) {
  Lcg rng(seed);
  std::vector<KernelPoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    double mag = rng.uniform(0.1, 2.0);
    double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    double x2 = rng.uniform(-2.0, 2.0);
    double xi2 = rng.uniform(-2.0, 2.0);
    if (std::abs(x2 - xi2) < 0.1) continue;
    pts.push_back({sign * mag, x2, xi2});
  }
  return pts;
}

namespace {
double rel(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }
// finite differences lose digits when the derivative itself is small, so scale by max(1, |want|)
double mixed(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1.0); }
}  // namespace

KernelCheckRow kernel_check_row(const KernelPoint& p) {
  KernelCheckRow r;
  r.point = p;
  r.fund_error = rel(fund_solution(p), fund_solution_quadrature(p));
  auto U = [&](double dd1, double x2) { return fund_solution({dd1, x2, p.xi2}); };
  const double h = 1e-5;
  cplx fd2 = (U(p.d1, p.x2 + h) - U(p.d1, p.x2 - h)) / (2 * h);
  cplx fd1 = (U(p.d1 + h, p.x2) - U(p.d1 - h, p.x2)) / (2 * h);
  double d2 = p.x2 - p.xi2;
  r.dx2_error = mixed(dU_dx2(p.d1, d2), fd2);
  r.dx1_error = mixed(dU_dx1(p), fd1);
  const double k = 1e-4;
  cplx u22 = (U(p.d1, p.x2 + k) - 2.0 * U(p.d1, p.x2) + U(p.d1, p.x2 - k)) / (k * k);
  cplx u12 = (U(p.d1 + k, p.x2 + k) - U(p.d1 + k, p.x2 - k) - U(p.d1 - k, p.x2 + k) + U(p.d1 - k, p.x2 - k)) /
             (4 * k * k);
  r.annihilation_fd = std::abs(u22 + I_unit * u12);
  r.annihilation_exact = std::abs(d2U_dx2dx2(p.d1, d2) + I_unit * d2U_dx1dx2(p.d1, d2));
  return r;
}

double exp_pv_reference(double xi) {
  using boost::math::expint;
  return std::exp(xi) * (expint(1 - xi) - expint(-1 - xi));
}

std::vector<PvCase> pv_corpus() {
  auto one = [](double) { return cplx(1); };
  auto zero = [](double) { return cplx(0); };
  auto ident = [](double x) { return cplx(x); };
  auto ex = [](double x) { return cplx(std::exp(x)); };
  return {
      {"const_symmetric", one, zero, -1, 1, 0.0, 0.0, true},
      {"linear", ident, one, -1, 1, 0.0, 2.0, true},
      {"const_offset", one, zero, -1, 1, 0.5, -std::log(3.0), true},
      {"exp", ex, ex, -1, 1, 0.3, exp_pv_reference(0.3), false},
  };
}

cplx pv_midpoint_excluded(const Evaluable& f, double xi, double a, double b, int m) {
  if (!(xi > a && xi < b)) throw DomainError("pv_midpoint_excluded: xi outside (a, b)");
  if (m < 1) throw ConfigurationError("m: need at least one midpoint");
  double r = std::min(xi - a, b - xi);
  double h = r / m;
  cplx s = 0;
  for (int k = 0; k < m; ++k) {
    double t = (k + 0.5) * h;
    s += h * (f(xi + t) - f(xi - t)) / t;
  }
  // remaining one-sided piece is regular
  double lo = xi - r > a ? a : xi + r, hi = xi - r > a ? xi - r : b;
  if (hi > lo) {
    QuadratureRule g = gauss_rule(64, lo, hi);
    for (std::size_t j = 0; j < g.size(); ++j) s += g.weights[j] * f(g.nodes[j]) / (g.nodes[j] - xi);
  }
  return s;
}

}  // namespace cbie::cli
