#include <gtest/gtest.h>

#include "cbie/manufactured.hpp"
#include "cbie/rng.hpp"

using namespace cbie;

namespace {
void expect_c(cplx got, cplx want, double tol = 1e-15) { EXPECT_LE(std::abs(got - want), tol) << got << " vs " << want; }
}  // namespace

TEST(Manufactured, EvalExamples) {
  SolutionValue a = eval_solution(polynomial_solution("z", {0, 1}), 1, 2);
  expect_c(a.u, {2, 1});
  expect_c(a.du_dx2, 1);
  expect_c(a.du_dx1, I_unit);
  SolutionValue b = eval_solution(polynomial_solution("g", {}, {0, 0, 1}), 3, 7);
  expect_c(b.u, 9);
  expect_c(b.du_dx2, 0);
  expect_c(b.du_dx1, 6);
  SolutionValue c = eval_solution(polynomial_solution("z2", {0, 0, 1}), 0, 1);
  expect_c(c.u, 1);
  expect_c(c.du_dx2, 2);
  expect_c(c.du_dx1, {0, 2});
}

TEST(Manufactured, CanonicalNames) {
  for (const auto& name : canonical_names()) EXPECT_EQ(solution_by_name(name).name, name);
  EXPECT_EQ(canonical_set().size(), 6u);
  EXPECT_THROW(solution_by_name("nope"), ConfigurationError);
  SolutionValue e = eval_solution(solution_by_name("exp_half"), 0.4, -0.3);
  cplx z(-0.3, 0.4);
  expect_c(e.u, std::exp(z / 2.0));
  expect_c(e.du_dx2, 0.5 * std::exp(z / 2.0));
}

TEST(Manufactured, PdeResidual) {
  Lcg rng(42);
  std::vector<Point2> pts;
  for (int k = 0; k < 50; ++k) pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
  EXPECT_LE(pde_residual_check(polynomial_solution("q", {0, 0, 1}, {0, 0, 0, 1}), pts, 1e-3), 1e-6);
  EXPECT_EQ(pde_residual_check(polynomial_solution("zero", {}, {}), pts, 1e-3), 0.0);
  std::vector<Point2> disc;
  for (int k = 0; k < 50; ++k) {
    double r = 2 * std::sqrt(rng.uniform()), t = rng.uniform(0, two_pi);
    disc.push_back({r * std::sin(t), r * std::cos(t)});
  }
  EXPECT_LE(pde_residual_check(exponential_solution("exp", 1, 1), disc, 1e-4), 1e-5);
  for (const auto& s : canonical_set()) EXPECT_LE(pde_residual_check(s, pts, 1e-3), 1e-5) << s.name;
  EXPECT_THROW(pde_residual_check(canonical_set()[0], pts, 0), ConfigurationError);
}

TEST(Manufactured, BcConstant) {
  PlaneDomain d = lens_domain();
  QuadratureRule r = gauss_rule(16, -1, 1);
  ManufacturedBC m = make_bc(polynomial_solution("c", {3.5}), d, 1, 2, r);
  for (std::size_t k = 0; k < r.size(); ++k) {
    expect_c(m.phi1_nodes[k], 3.5);
    expect_c(m.phi2_nodes[k], 7.0);
  }
  EXPECT_FALSE(m.endpoints.vanishes());
  EXPECT_FALSE(m.endpoints.warning().empty());
}

TEST(Manufactured, BcLinear) {
  PlaneDomain d = lens_domain();
  QuadratureRule r = gauss_rule(16, -1, 1);
  ManufacturedBC m = make_bc(polynomial_solution("z", {0, 1}), d, 1, 1, r);
  for (std::size_t k = 0; k < r.size(); ++k) {
    double x = r.nodes[k];
    expect_c(m.phi1_nodes[k], 1.0 + cplx(-(1 - x * x), x));
    expect_c(m.phi2_nodes[k], 1.0 + cplx(1 - x * x, x));
  }
}

TEST(Manufactured, BcQuadraticIndependentEvaluation) {
  PlaneDomain d = lens_domain();
  QuadratureRule r = gauss_rule(32, -1, 1);
  ManufacturedBC m = make_bc(solution_by_name("z2"), d, 1, 1, r);
  Lcg rng(42);
  for (int k = 0; k < 10; ++k) {
    std::size_t j = static_cast<std::size_t>(rng.uniform() * r.size());
    double x = r.nodes[j];
    for (int side = 0; side < 2; ++side) {
      double g = (side == 0 ? -1 : 1) * (1 - x * x);
      cplx z(g, x);
      cplx want = 2.0 * z + z * z;
      expect_c(side == 0 ? m.phi1_nodes[j] : m.phi2_nodes[j], want, 1e-14);
    }
  }
}

TEST(Manufactured, TaperVanishesAtEnds) {
  SolutionSpec s = with_endpoint_taper(polynomial_solution("g", {}, {1, 2}), -1, 1, 2);
  EXPECT_NEAR(std::abs(eval_solution(s, 1, 0.3).u), 0, 1e-15);
  EXPECT_NEAR(std::abs(eval_solution(s, -1, 0.3).u), 0, 1e-15);
  EXPECT_NEAR(std::abs(eval_solution(s, 0, 0.3).u - 1.0), 0, 1e-15);
}

TEST(Manufactured, TraceMatchesEval) {
  PlaneDomain d = lens_domain();
  QuadratureRule r = gauss_rule(20, -1, 1);
  SolutionSpec s = solution_by_name("z2_plus_cubic");
  BoundaryTrace t = make_trace(s, d, r);
  for (std::size_t k = 0; k < r.size(); ++k) {
    double x = r.nodes[k];
    SolutionValue lo = eval_solution(s, x, eval_curve(d, Side::lower, x).first);
    SolutionValue up = eval_solution(s, x, eval_curve(d, Side::upper, x).first);
    EXPECT_EQ(t.u_lower[k], lo.u);
    EXPECT_EQ(t.du_upper[k], up.du_dx2);
    EXPECT_EQ(t.dt(0)[k], lo.du_dx1);
  }
  EXPECT_NO_THROW(t.validate());
}

TEST(Manufactured, DuFromBc) {
  std::vector<cplx> u{0, 0}, phi{1, 2};
  EXPECT_EQ(du_from_bc(u, 1, phi), phi);
  std::vector<cplx> ones{1, 1}, zero{0, 0};
  EXPECT_EQ(du_from_bc(ones, 1, zero), (std::vector<cplx>{-1, -1}));
  EXPECT_THROW(du_from_bc(ones, 1, std::vector<cplx>{0}), ShapeError);
}
