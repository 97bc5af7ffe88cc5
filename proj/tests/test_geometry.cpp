#include <gtest/gtest.h>

#include <cmath>

#include "cbie/geometry.hpp"

using namespace cbie;

TEST(Geometry, LensValues) {
  PlaneDomain d = lens_domain();
  auto [v, s] = eval_curve(d, Side::upper, 0.0);
  EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_DOUBLE_EQ(s, 0.0);
  auto [v2, s2] = eval_curve(d, Side::lower, 0.5);
  EXPECT_DOUBLE_EQ(v2, -0.75);
  EXPECT_DOUBLE_EQ(s2, 1.0);
}

TEST(Geometry, TabulatedTwoPointsIsLinear) {
  CurveDescriptor c = CurveDescriptor::tabulated({0, 1}, {0, 1});
  CurvePoint p = c.eval(0.5);
  EXPECT_DOUBLE_EQ(p.value, 0.5);
  EXPECT_DOUBLE_EQ(p.slope, 1.0);
}

TEST(Geometry, TabulatedInterpolatesNodesAndStaysMonotone) {
  std::vector<double> xs{0, 0.2, 0.5, 0.7, 1.0}, ys{0, 0.1, 0.1, 0.6, 2.0};
  CurveDescriptor c = CurveDescriptor::tabulated(xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(c.eval(xs[i]).value, ys[i], 1e-15);
  double prev = -1;
  for (int k = 0; k <= 1000; ++k) {
    double v = c.eval(k / 1000.0).value;
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
  // flat segment stays flat
  EXPECT_NEAR(c.eval(0.35).value, 0.1, 1e-15);
}

TEST(Geometry, TabulatedSlopeMatchesDifference) {
  CurveDescriptor c = CurveDescriptor::tabulated({-1, -0.3, 0.4, 1}, {0, 0.5, 0.9, 1.0});
  for (double x : {-0.8, -0.1, 0.2, 0.7}) {
    double h = 1e-6;
    double fd = (c.eval(x + h).value - c.eval(x - h).value) / (2 * h);
    EXPECT_NEAR(c.eval(x).slope, fd, 1e-7);
  }
}

TEST(Geometry, PolynomialDerivatives) {
  CurveDescriptor c = CurveDescriptor::polynomial({1, -2, 3});  // 1 - 2x + 3x^2
  CurvePoint p = c.eval(2.0);
  EXPECT_DOUBLE_EQ(p.value, 9.0);
  EXPECT_DOUBLE_EQ(p.slope, 10.0);
  EXPECT_DOUBLE_EQ(p.curvature, 6.0);
}

TEST(Geometry, OutOfIntervalIsDomainError) {
  PlaneDomain d = lens_domain();
  EXPECT_THROW(eval_curve(d, Side::upper, 1.5), DomainError);
  EXPECT_THROW(eval_curve(d, Side::lower, -1.0001), DomainError);
}

TEST(Geometry, EllipseEndpointSlopeIsGeometryError) {
  PlaneDomain d = ellipse_domain();
  EXPECT_THROW(eval_curve(d, Side::upper, 1.0), GeometryError);
  EXPECT_NO_THROW(eval_curve(d, Side::upper, 0.999));
}

TEST(Geometry, ValidateLens) {
  ValidationReport r = validate_domain(lens_domain(), 101);
  EXPECT_TRUE(r.valid());
  EXPECT_TRUE(r.slopes_bounded());
  EXPECT_DOUBLE_EQ(r.max_abs_slope, 2.0);
  EXPECT_DOUBLE_EQ(std::abs(r.max_slope_at), 1.0);
}

TEST(Geometry, ValidateDegenerate) {
  PlaneDomain d{-1, 1, CurveDescriptor::polynomial({0}), CurveDescriptor::polynomial({0})};
  ValidationReport r = validate_domain(d, 11);
  EXPECT_FALSE(r.valid());
  EXPECT_EQ(r.order_violations.size(), 9u);
}

TEST(Geometry, ValidateEllipseFlagsEndpoints) {
  ValidationReport r = validate_domain(ellipse_domain(), 101);
  EXPECT_TRUE(r.valid());
  EXPECT_FALSE(r.slopes_bounded());
  ASSERT_EQ(r.nonfinite_points.size(), 2u);
  // |gamma'| = |x| / sqrt(1 - x^2) at the last interior probe
  double x = 0.98;
  EXPECT_NEAR(r.max_abs_slope, x / std::sqrt(1 - x * x), 1e-12);
}

TEST(Geometry, SwappingSidesSwapsOutputs) {
  PlaneDomain d = lens_domain();
  PlaneDomain s{d.a1, d.b1, d.upper, d.lower};
  for (double x : {-0.9, -0.2, 0.3, 0.77}) {
    EXPECT_EQ(eval_curve(d, Side::upper, x), eval_curve(s, Side::lower, x));
    EXPECT_EQ(eval_curve(d, Side::lower, x), eval_curve(s, Side::upper, x));
  }
}

TEST(Geometry, MakeDomainChecks) {
  EXPECT_THROW(make_domain(1, -1, CurveDescriptor::lens(-1), CurveDescriptor::lens(1)), ConfigurationError);
  EXPECT_THROW(make_domain(-1, 1, CurveDescriptor::tabulated({-0.5, 1}, {0, 0}), CurveDescriptor::lens(1)),
               ConfigurationError);
  EXPECT_THROW(CurveDescriptor(CurveKind::tabulated, {0, 0, 0, 1}), ConfigurationError);
  EXPECT_THROW(CurveDescriptor(CurveKind::lens, {1, 2}), ConfigurationError);
  EXPECT_EQ(curve_kind_from_string("ellipse-graph"), CurveKind::ellipse_graph);
  EXPECT_THROW(curve_kind_from_string("spline"), ConfigurationError);
}
