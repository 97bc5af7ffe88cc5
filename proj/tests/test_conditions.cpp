#include <gtest/gtest.h>

#include "cbie/conditions.hpp"
#include "cbie/manufactured.hpp"
#include "cbie/rng.hpp"

using namespace cbie;

namespace {

double sup(const SolutionSpec& s, ConditionId id, int n, Reading r = Reading::resolved, Side side = Side::lower) {
  PlaneDomain d = lens_domain();
  BoundaryTrace t = make_trace(s, d, gauss_rule(n, d.a1, d.b1));
  return residual_report(t, d, id, r, 0.1, side).sup_window;
}

const ConditionId all_nc[] = {ConditionId::eq8, ConditionId::eq9, ConditionId::eq10, ConditionId::eq11,
                              ConditionId::eq12};

}  // namespace

TEST(Conditions, SingularFactorConstantCurve) {
  PlaneDomain d{-1, 1, CurveDescriptor::polynomial({-1}), CurveDescriptor::polynomial({2})};
  SingularFactor f = singular_factor(d, Side::upper, 0.4, -0.1);
  EXPECT_EQ(f.remainder, cplx(0));
  EXPECT_NEAR(std::abs(f.singular - 1.0 / (two_pi * cplx(0, 0.5))), 0, 1e-16);
}

TEST(Conditions, SingularFactorLinearCurve) {
  PlaneDomain d{-1, 1, CurveDescriptor::polynomial({-3, 1}), CurveDescriptor::polynomial({0, 1})};
  for (auto [x, xi] : {std::pair{0.5, -0.2}, std::pair{-0.9, 0.9}}) {
    SingularFactor f = singular_factor(d, Side::upper, x, xi);
    EXPECT_NEAR(std::abs(f.kernel - 1.0 / (two_pi * (x - xi) * cplx(1, 1))), 0, 1e-15);
  }
}

TEST(Conditions, SingularFactorLens) {
  PlaneDomain d = lens_domain();
  SingularFactor f = singular_factor(d, Side::upper, 0.3, 0.1);
  double g = eval_curve(d, Side::upper, 0.3).first - eval_curve(d, Side::upper, 0.1).first;
  EXPECT_NEAR(std::abs(f.kernel - dU_dx2(0.2, g)), 0, 1e-15 * std::abs(f.kernel));
  EXPECT_THROW(singular_factor(d, Side::upper, 0.3, 0.3), KernelSingularityError);
}

TEST(Conditions, SingularFactorIdentity) {
  PlaneDomain d = lens_domain();
  Lcg rng(42);
  for (int k = 0; k < 1000; ++k) {
    double x = rng.uniform(-0.99, 0.99), xi = rng.uniform(-0.99, 0.99);
    if (x == xi) continue;
    Side s = k % 2 ? Side::upper : Side::lower;
    SingularFactor f = singular_factor(d, s, x, xi);
    double g = eval_curve(d, s, x).first - eval_curve(d, s, xi).first;
    cplx want = dU_dx2(x - xi, g);
    EXPECT_LE(std::abs(f.singular + f.remainder - want), 1e-13 * std::abs(want));
  }
}

TEST(Conditions, Eq8ExactForZeroDerivative) {
  PlaneDomain d = lens_domain();
  for (const char* name : {"one", "x1"}) {
    BoundaryTrace t = make_trace(solution_by_name(name), d, gauss_rule(32, -1, 1));
    for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(residual_eq8(t, d, i), cplx(0)) << name << " " << i;
  }
}

TEST(Conditions, ConstantTraceAllZero) {
  PlaneDomain d = lens_domain();
  BoundaryTrace t = make_trace(polynomial_solution("c", {2.5}), d, gauss_rule(24, -1, 1));
  for (ConditionId id : {ConditionId::eq9, ConditionId::eq10, ConditionId::eq11, ConditionId::eq12})
    for (std::size_t i = 0; i < 24; ++i) EXPECT_EQ(residual_nc(t, d, id, i), cplx(0));
  for (std::size_t i = 3; i < 21; ++i)
    for (Side s : {Side::lower, Side::upper}) EXPECT_LE(std::abs(residual_eq7_boundary(t, d, i, s)), 1e-12);
}

TEST(Conditions, LinearSolutionSmallResiduals) {
  for (ConditionId id : {ConditionId::eq9, ConditionId::eq10, ConditionId::eq11, ConditionId::eq12})
    EXPECT_LE(sup(solution_by_name("z"), id, 128), 1e-6) << to_string(id);
}

TEST(Conditions, QuadraticConverges) {
  SolutionSpec s = solution_by_name("z2");
  for (ConditionId id : all_nc) {
    double a = sup(s, id, 128), b = sup(s, id, 256);
    EXPECT_LE(b, 1e-3) << to_string(id);
    EXPECT_TRUE(b <= 1e-10 || a / b >= 2) << to_string(id) << " " << a << " " << b;
  }
}

TEST(Conditions, Eq7BoundaryHalfU) {
  for (Side side : {Side::lower, Side::upper}) {
    double a = sup(solution_by_name("z"), ConditionId::eq7_boundary, 128, Reading::resolved, side);
    double b = sup(solution_by_name("z"), ConditionId::eq7_boundary, 256, Reading::resolved, side);
    EXPECT_LE(b, 1e-3);
    EXPECT_TRUE(b <= 1e-10 || a / b >= 2) << a << " " << b;
  }
  SolutionSpec g = with_endpoint_taper(polynomial_solution("g", {}, {0.3, 1, -2}), -1, 1, 2);
  EXPECT_LE(sup(g, ConditionId::eq7_boundary, 256), 1e-3);
}

// The sign choices are pinned by convergence: the rejected readings must not converge.
// For eq8 and eq7 on the boundary the jump term already supplies u, so the
// integral sum itself must vanish and its overall sign is not testable; the
// printed arrangement is what gets rejected there.
TEST(Conditions, SignSelfAudit) {
  SolutionSpec s = solution_by_name("z2");
  EXPECT_LE(sup(s, ConditionId::eq8, 256), 1e-3);
  EXPECT_GT(sup(s, ConditionId::eq8, 256, Reading::as_printed), 1e-2);
  EXPECT_LE(sup(s, ConditionId::eq7_boundary, 256), 1e-3);
  EXPECT_GT(sup(s, ConditionId::eq7_boundary, 256, Reading::as_printed), 1e-2);
  for (ConditionId id : {ConditionId::eq9, ConditionId::eq10, ConditionId::eq11, ConditionId::eq12}) {
    EXPECT_LE(sup(s, id, 256, Reading::resolved), 1e-3);
    EXPECT_GT(sup(s, id, 256, Reading::negated_integrals), 1e-2) << to_string(id);
  }
}

TEST(Conditions, MissingTangentialIsDataError) {
  PlaneDomain d = lens_domain();
  BoundaryTrace t = make_trace(solution_by_name("z"), d, gauss_rule(16, -1, 1));
  t.dt_lower.reset();
  EXPECT_THROW(residual_nc(t, d, ConditionId::eq9, 3), DataError);
  EXPECT_THROW(residual_nc(t, d, ConditionId::eq11, 3), DataError);
  EXPECT_NO_THROW(residual_nc(t, d, ConditionId::eq10, 3));
  EXPECT_THROW(residual_report(t, d, ConditionId::eq9), DataError);
}

TEST(Conditions, WindowSup) {
  QuadratureRule r = gauss_rule(20, -1, 1);
  std::vector<double> v(20);
  for (int k = 0; k < 20; ++k) v[k] = k;
  double want = 0;
  for (int k = 0; k < 20; ++k)
    if (r.nodes[k] >= -0.8 && r.nodes[k] <= 0.8) want = std::max(want, v[k]);
  EXPECT_EQ(window_sup(r, v, 0.2), want);
  EXPECT_LT(window_sup(r, v, 0.2), 19.0);
}

TEST(Conditions, Names) {
  for (ConditionId id : {ConditionId::eq8, ConditionId::eq9, ConditionId::eq10, ConditionId::eq11, ConditionId::eq12,
                         ConditionId::eq7_boundary})
    EXPECT_EQ(condition_from_string(to_string(id)), id);
  EXPECT_THROW(condition_from_string("eq13"), ConfigurationError);
}
