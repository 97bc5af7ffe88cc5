#include <gtest/gtest.h>

#include "cbie/kernel.hpp"
#include "cbie/rng.hpp"
#include "cli/oracles.hpp"

using namespace cbie;

TEST(Kernel, HeavisideValues) {
  EXPECT_EQ(heaviside_sym(1.0), 1.0);
  EXPECT_EQ(heaviside_sym(-2.5), 0.0);
  EXPECT_EQ(heaviside_sym(0.0), 0.5);
}

TEST(Kernel, HeavisidePartition) {
  Lcg rng(42);
  for (int k = 0; k < 1000; ++k) {
    double t = rng.uniform(-10, 10);
    EXPECT_EQ(heaviside_sym(t) + heaviside_sym(-t), 1.0);
  }
  EXPECT_EQ(heaviside_sym(0.0) + heaviside_sym(-0.0), 1.0);
}

TEST(Kernel, FundamentalSolutionZeroAtX2Zero) {
  EXPECT_EQ(fund_solution({0.7, 0.0, 0.4}), cplx(0));
  EXPECT_EQ(fund_solution({-1.2, 0.0, 0.0}), cplx(0));
}

TEST(Kernel, FundamentalSolutionMatchesQuadrature) {
  cplx want = cli::fund_solution_quadrature({1, 1, 0});
  EXPECT_LE(std::abs(fund_solution({1, 1, 0}) - want), 1e-10 * std::abs(want));
  for (const auto& p : cli::kernel_probe_points(7, 50)) {
    cplx ref = cli::fund_solution_quadrature(p);
    EXPECT_LE(std::abs(fund_solution(p) - ref), 1e-10 * std::abs(ref));
  }
}

TEST(Kernel, RealAxisCaseUsesRealLogs) {
  // d1 = 0, xi2 outside [0, x2]: integrand 1/(t - xi2) is real
  KernelPoint p{0.0, 1.0, 2.0};
  cplx ref = cli::fund_solution_quadrature(p);
  EXPECT_NEAR(fund_solution(p).real(), ref.real(), 1e-14);
  EXPECT_EQ(fund_solution(p).imag(), 0.0);
  EXPECT_NEAR(fund_solution(p).real(), std::log(0.5) / two_pi, 1e-15);
}

TEST(Kernel, ConjugationSymmetry) {
  for (const auto& p : cli::kernel_probe_points(3, 20)) {
    cplx a = fund_solution(p), b = fund_solution({-p.d1, p.x2, p.xi2});
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-15);
  }
}

TEST(Kernel, SingularConfigurations) {
  EXPECT_TRUE(is_singular({0, 1, 0.5}));
  EXPECT_TRUE(is_singular({0, -1, 0}));
  EXPECT_FALSE(is_singular({0, 1, 1.5}));
  EXPECT_FALSE(is_singular({1e-300, 1, 0.5}));
  try {
    fund_solution({0, 1, 0.5});
    FAIL() << "expected a singularity error";
  } catch (const KernelSingularityError& e) {
    EXPECT_EQ(e.d1, 0.0);
    EXPECT_EQ(e.x2, 1.0);
    EXPECT_EQ(e.xi2, 0.5);
  }
  EXPECT_THROW(dU_dx2(0, 0), KernelSingularityError);
  EXPECT_THROW(dU_dx1({0, 2, 1}), KernelSingularityError);
}

TEST(Kernel, DerivativeClosedForms) {
  EXPECT_NEAR(std::abs(dU_dx2(0, 1) - cplx(1 / two_pi)), 0, 1e-16);
  EXPECT_NEAR(std::abs(dU_dx2(1, 0) - cplx(0, -1 / two_pi)), 0, 1e-16);
  for (double lam : {0.5, 3.0, 17.0})
    EXPECT_NEAR(std::abs(dU_dx2(lam * 0.3, lam * -0.7) - dU_dx2(0.3, -0.7) / lam), 0, 1e-15);
  EXPECT_EQ(dU_dx1({0.4, 0.0, 0.3}), cplx(0));
  cplx want = I_unit / two_pi * (1.0 / cplx(1, 1) - 1.0 / cplx(0, 1));
  EXPECT_NEAR(std::abs(dU_dx1({1, 1, 0}) - want), 0, 1e-16);
}

TEST(Kernel, DerivativesMatchFiniteDifferences) {
  for (const auto& p : cli::kernel_probe_points(42, 100)) {
    cli::KernelCheckRow r = cli::kernel_check_row(p);
    EXPECT_LE(r.dx2_error, 1e-8);
    EXPECT_LE(r.dx1_error, 1e-8);
  }
}

TEST(Kernel, Annihilation) {
  for (const auto& p : cli::kernel_probe_points(42, 100)) {
    double d2 = p.x2 - p.xi2;
    EXPECT_EQ(d2U_dx2dx2(p.d1, d2) + I_unit * d2U_dx1dx2(p.d1, d2), cplx(0));
    EXPECT_LE(cli::kernel_check_row(p).annihilation_fd, 1e-6);
  }
}

TEST(Kernel, CauchyRiemannCombinationIndependentOfX2) {
  for (double x2 : {-1.3, 0.2, 0.9, 2.5}) {
    KernelPoint p{0.6, x2, 0.35};
    cplx c = dU_dx2(p.d1, p.x2 - p.xi2) + I_unit * dU_dx1(p);
    EXPECT_NEAR(std::abs(c - cauchy_riemann_combination(0.6, 0.35)), 0, 1e-15);
  }
}

TEST(Kernel, LcgSequence) {
  Lcg a(42), b(42);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a.next(), b.next());
  Lcg c(0);
  EXPECT_EQ(c.next(), 1442695040888963407ULL);
  EXPECT_EQ(c.next(), 1442695040888963407ULL * 6364136223846793005ULL + 1442695040888963407ULL);
}
