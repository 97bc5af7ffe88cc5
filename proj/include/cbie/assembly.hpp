#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bc.hpp"
#include "boundary_ops.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "kernel.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace cbie {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Unknowns: [0, N) u on gamma_1 at the nodes, [N, 2N) u on gamma_2.
struct FredholmSystem {
  Matrix matrix;
  Vector rhs;
  QuadratureRule rule;
  cplx alpha1 = 1, alpha2 = 2;

  std::size_t nodes() const { return rule.size(); }
};

// Boundary operators on the v = du/dx2 traces, stacked [v_1; v_2]:
//   jump   [u](xi) = u_2 - u_1 = T v, kernels U(x - xi) with xi at both ends
//          of the vertical segment through xi1
//   plem_k 2 int [v (1 - i gamma') dU/dx2(x - xi)], xi on gamma_k
//   pv     PV int f / (x - xi1) on plain samples
struct BoundaryOperators {
  Matrix jump;
  std::array<Matrix, 2> plem;
  Eigen::MatrixXd pv;
};

inline BoundaryOperators boundary_operators(const BoundaryGrid& g) {
  std::size_t n = g.size();
  BoundaryOperators op;
  op.jump = Matrix::Zero(n, 2 * n);
  op.plem[0] = Matrix::Zero(n, 2 * n);
  op.plem[1] = Matrix::Zero(n, 2 * n);
  op.pv = Eigen::MatrixXd::Zero(n, n);
  parallel_for(n, [&](std::size_t i) {
    double xi = g.rule().nodes[i];
    SingularWeights sw = g.product().at(xi);
    Target t{xi, static_cast<int>(i), &sw};
    for (std::size_t m = 0; m < n; ++m) op.pv(i, m) = sw.pv[m];
    for (int j = 0; j < 2; ++j) {
      double sj = curve_sign(j);
      auto lo = log_kernel_weights(g, t, {j, g.curve(0, i).value});
      auto up = log_kernel_weights(g, t, {j, g.curve(1, i).value});
      for (std::size_t m = 0; m < n; ++m) op.jump(i, j * n + m) = sj * arc_factor(g, j, m) * (lo[m] - up[m]);
      for (int k = 0; k < 2; ++k) {
        auto w = cauchy_kernel_weights(g, t, {j, g.curve(k, i).value});
        for (std::size_t m = 0; m < n; ++m) op.plem[k](i, j * n + m) = 2.0 * sj * arc_factor(g, j, m) * w[m];
      }
    }
  });
  return op;
}

namespace detail {

inline void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw AssemblyError(std::string(what) + ": non-finite entry");
}

}  // namespace detail

// Row block A: u_1 - u_2 + T v = 0 with v = phi - alpha u.
// Row block B: (1/alpha_1)(v_1 - plem_1 v) + (1/alpha_2)(v_2 - plem_2 v) = 0,
// whose Cauchy parts add up to (i/pi) PV int (v_1/alpha_1 - v_2/alpha_2) / (x - xi1);
// eliminating v turns that into PV int [u] / (x - xi1), replaced by P T v.
// Stored rows are (A + B)/2 and (B - A)/2 so that the matrix reads I + K.
inline FredholmSystem assemble(const PlaneDomain& domain, const BCSpec& bc, const QuadratureRule& rule) {
  validate_bc(bc);
  BoundaryGrid g(domain, rule);
  std::size_t n = rule.size();
  std::vector<cplx> phi1 = sample(bc.phi1, rule), phi2 = sample(bc.phi2, rule);
  Vector phi(2 * n);
  for (std::size_t m = 0; m < n; ++m) {
    phi(m) = phi1[m];
    phi(n + m) = phi2[m];
  }
  if (!phi.allFinite()) throw DataError("phi: non-finite value at a node");

  BoundaryOperators op = boundary_operators(g);
  detail::require_finite(op.jump, "assemble");
  detail::require_finite(op.plem[0], "assemble");
  detail::require_finite(op.plem[1], "assemble");

  const cplx a1 = bc.alpha1, a2 = bc.alpha2;
  const cplx ipi = I_unit / std::numbers::pi;
  Matrix P = op.pv.cast<cplx>();
  Matrix D = op.plem[0] / a1 + op.plem[1] / a2;
  D.leftCols(n) -= ipi * P / a1;
  D.rightCols(n) += ipi * P / a2;
  Matrix PT = P * op.jump;

  Vector alpha(2 * n);
  alpha.head(n).setConstant(a1);
  alpha.tail(n).setConstant(a2);

  Matrix MA = -op.jump * alpha.asDiagonal();
  Matrix MB = -(ipi * PT + D) * alpha.asDiagonal();
  for (std::size_t m = 0; m < n; ++m) {
    MA(m, m) += 1.0;
    MA(m, n + m) -= 1.0;
    MB(m, m) += 1.0;
    MB(m, n + m) += 1.0;
  }
  Vector rA = -op.jump * phi;
  Vector scaled = phi.head(n) / a1 - phi.tail(n) / a2;
  Vector rB = phi.head(n) / a1 + phi.tail(n) / a2 - ipi * (P * scaled) - ipi * (PT * phi) - D * phi;

  FredholmSystem sys;
  sys.rule = rule;
  sys.alpha1 = a1;
  sys.alpha2 = a2;
  sys.matrix.resize(2 * n, 2 * n);
  sys.matrix.topRows(n) = 0.5 * (MA + MB);
  sys.matrix.bottomRows(n) = 0.5 * (MB - MA);
  sys.rhs.resize(2 * n);
  sys.rhs.head(n) = 0.5 * (rA + rB);
  sys.rhs.tail(n) = 0.5 * (rB - rA);
  detail::require_finite(sys.matrix, "assemble");
  if (!sys.rhs.allFinite()) throw AssemblyError("assemble: non-finite right-hand side");
  return sys;
}

inline Vector stack(const std::vector<cplx>& lower, const std::vector<cplx>& upper) {
  if (lower.size() != upper.size()) throw ShapeError("stack: trace lengths differ");
  Vector x(2 * lower.size());
  for (std::size_t m = 0; m < lower.size(); ++m) {
    x(m) = lower[m];
    x(lower.size() + m) = upper[m];
  }
  return x;
}

inline double residual_inf(const FredholmSystem& sys, const Vector& u) {
  if (u.size() != sys.rhs.size()) throw ShapeError("residual: vector length does not match system");
  return (sys.matrix * u - sys.rhs).cwiseAbs().maxCoeff();
}

struct DecayReport {
  std::vector<double> singular_values;  // of K = matrix - I, descending
  double ratio5 = 0, ratio10 = 0, ratio20 = 0;
  double condition = 0;  // 2-norm condition number of the full matrix
};

inline DecayReport compactness_probe(const FredholmSystem& sys) {
  Eigen::Index n = sys.matrix.rows();
  Matrix K = sys.matrix - Matrix::Identity(n, n);
  Eigen::BDCSVD<Matrix> svdk(K);
  Eigen::VectorXd s = svdk.singularValues();
  DecayReport r;
  r.singular_values.assign(s.data(), s.data() + s.size());
  auto ratio = [&](Eigen::Index k) {
    if (s.size() < k || s(0) == 0) return 0.0;
    return s(k - 1) / s(0);
  };
  r.ratio5 = ratio(5);
  r.ratio10 = ratio(10);
  r.ratio20 = ratio(20);
  Eigen::BDCSVD<Matrix> svdm(sys.matrix);
  Eigen::VectorXd sm = svdm.singularValues();
  r.condition = sm(sm.size() - 1) > 0 ? sm(0) / sm(sm.size() - 1) : std::numeric_limits<double>::infinity();
  return r;
}

// Layout: "CBIE1", u64 N (nodes per curve), then the 2N x 2N matrix row-major
// and the 2N right-hand side, each entry as two little-endian doubles (re, im).
namespace detail {
inline void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(v >> (8 * k));
  os.write(reinterpret_cast<const char*>(b), 8);
}
inline void put_f64(std::ostream& os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(os, v);
}
inline std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw DataError("dump: truncated file");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return v;
}
inline double get_f64(std::istream& is) {
  std::uint64_t v = get_u64(is);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}
}  // namespace detail

inline void write_dump(const FredholmSystem& sys, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("dump: cannot open " + path);
  os.write("CBIE1", 5);
  detail::put_u64(os, sys.nodes());
  for (Eigen::Index r = 0; r < sys.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < sys.matrix.cols(); ++c) {
      detail::put_f64(os, sys.matrix(r, c).real());
      detail::put_f64(os, sys.matrix(r, c).imag());
    }
  for (Eigen::Index r = 0; r < sys.rhs.size(); ++r) {
    detail::put_f64(os, sys.rhs(r).real());
    detail::put_f64(os, sys.rhs(r).imag());
  }
}

struct DumpContents {
  Matrix matrix;
  Vector rhs;
};

inline DumpContents read_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("dump: cannot open " + path);
  char magic[5];
  if (!is.read(magic, 5) || std::memcmp(magic, "CBIE1", 5) != 0) throw DataError("dump: bad magic");
  std::uint64_t n = detail::get_u64(is);
  Eigen::Index m = static_cast<Eigen::Index>(2 * n);
  DumpContents d;
  d.matrix.resize(m, m);
  d.rhs.resize(m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      double re = detail::get_f64(is);
      double im = detail::get_f64(is);
      d.matrix(r, c) = cplx(re, im);
    }
  for (Eigen::Index r = 0; r < m; ++r) {
    double re = detail::get_f64(is);
    double im = detail::get_f64(is);
    d.rhs(r) = cplx(re, im);
  }
  return d;
}

}  // namespace cbie
