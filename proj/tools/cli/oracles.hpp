#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cbie/cbie.hpp"

namespace cbie::cli {

// U by adaptive Gauss-Kronrod on (1/2pi) int_0^x2 dt / (t - xi2 + i d1).
cplx fund_solution_quadrature(const KernelPoint& p);

struct KernelCheckRow {
  KernelPoint point;
  double fund_error = 0;        // relative, closed form vs quadrature
  double dx2_error = 0;         // |diff| / max(1, |dU_dx2|), central difference h = 1e-5
  double dx1_error = 0;         // same for dU_dx1
  double annihilation_fd = 0;   // |D22 U + i D12 U|
  double annihilation_exact = 0;  // |U_22 + i U_12| from the closed forms
};

// Probe points: d1 = +-U(0.1, 2), x2, xi2 in U(-2, 2), |x2 - xi2| >= 0.1.
std::vector<KernelPoint> kernel_probe_points(std::uint64_t seed, int count);
KernelCheckRow kernel_check_row(const KernelPoint& p);

// PV of exp(x) / (x - xi) over (-1, 1): e^xi (Ei(1 - xi) - Ei(-1 - xi)).
double exp_pv_reference(double xi);

struct PvCase {
  std::string name;
  Evaluable f, df;
  double a, b, xi;
  cplx exact;
  bool polynomial;  // exact for every rule in the corpus
};

std::vector<PvCase> pv_corpus();

// Cross-check: uniform midpoints placed symmetrically about xi (so xi itself is
// never sampled) on the symmetric part, Gauss on the rest.
cplx pv_midpoint_excluded(const Evaluable& f, double xi, double a, double b, int m);

}  // namespace cbie::cli
