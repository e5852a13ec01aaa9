// SPDX-License-Identifier: Apache-2.0
#include "ife1d/projections.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "ife1d/error.hpp"
#include "ife1d/linalg.hpp"
#include "ife1d/quadrature.hpp"

namespace ife1d {

namespace {

std::vector<RifeFunction> canonical_basis(int m, double alpha_hat, const JumpSequence& r) {
  std::vector<RifeFunction> b;
  for (int j = 0; j <= m; ++j) b.push_back(RifeFunction::canonical(m, alpha_hat, r, j));
  return b;
}

// (w, f^(k) * g) over [0, 1] split at alpha_hat, g given as data.
double weighted_data_moment(const RifeFunction& f, int k, double wl, double wr, const PiecewiseSmooth& v, int kv,
                            double alpha_hat) {
  return integrate_split(alpha_hat, kDataPoints, [&](double x, Side s) {
    return (s == Side::minus ? wl : wr) * f.eval(x, k, s) * v.eval(x, kv, s);
  });
}

RifeFunction from_solution(int m, double alpha_hat, const JumpSequence& r, const Eigen::VectorXd& c, int offset = 0) {
  std::vector<double> coeffs(m + 1);
  for (int j = 0; j <= m; ++j) coeffs[j] = c(offset + j);
  return RifeFunction(m, alpha_hat, r, std::move(coeffs));
}

void check_data_jumps(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v,
                      ProjectionReport& report) {
  for (int k = 0; k <= m && k < static_cast<int>(r.size()); ++k) {
    const double lv = v.eval(alpha_hat, k, Side::minus);
    const double rv = v.eval(alpha_hat, k, Side::plus);
    const double scale = std::max({1.0, std::abs(lv), std::abs(rv)});
    if (std::abs(rv - r[k] * lv) > 1e-8 * scale) {
      std::ostringstream os;
      os << "data violates jump condition of order " << k;
      report.warnings.push_back(os.str());
    }
  }
}

}  // namespace

Projected<RifeFunction> moment_projection(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v) {
  checked_alpha_hat(alpha_hat);
  require(m >= 0 && static_cast<int>(r.size()) >= m + 1, ErrorCode::invalid_argument,
          "moment_projection: jump sequence shorter than degree + 1");
  const auto basis = canonical_basis(m, alpha_hat, r);
  const int n = m + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j)
      A(i, j) = integrate_split(alpha_hat, default_points(m),
                                [&](double x, Side s) { return (s == Side::minus ? r[i] : 1.0) * basis[j].eval(x, i, s); });
    b(i) = integrate_split(alpha_hat, kDataPoints,
                           [&](double x, Side s) { return (s == Side::minus ? r[i] : 1.0) * v.eval(x, i, s); });
  }
  // Upper triangular with diagonal i! r_i.
  Eigen::VectorXd c = A.triangularView<Eigen::Upper>().solve(b);
  Projected<RifeFunction> out{from_solution(m, alpha_hat, r, c), {}};
  out.report.residual = (A * c - b).cwiseAbs().maxCoeff();
  const Eigen::VectorXd d = A.diagonal().cwiseAbs();
  out.report.condition = d.maxCoeff() / d.minCoeff();
  check_data_jumps(m, alpha_hat, r, v, out.report);
  return out;
}

double bramble_hilbert_constant(int i, const JumpSequence& r) {
  require(i >= 0 && i < static_cast<int>(r.size()), ErrorCode::index, "bramble_hilbert_constant: index out of range");
  double sum = 1.0;
  for (int k = 0; k <= i; ++k) {
    double prod = 1.0;
    for (int j = k; j <= i; ++j) prod *= std::max(r[j] * r[j], 1.0 / (r[j] * r[j]));
    sum += prod;
  }
  return std::sqrt(sum);
}

std::vector<double> bramble_hilbert_ratios(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v) {
  const RifeFunction p = moment_projection(m, alpha_hat, r, v).value;
  auto semi2 = [&](int i) {
    return integrate_split(alpha_hat, kDataPoints, [&](double x, Side s) {
      const double e = v.eval(x, i, s) - (i <= m ? p.eval(x, i, s) : 0.0);
      return e * e;
    });
  };
  std::vector<double> s2(m + 2);
  for (int i = 0; i <= m + 1; ++i) s2[i] = semi2(i);
  const double top = std::sqrt(s2[m + 1]);
  require(top > 0.0, ErrorCode::invalid_argument, "bramble_hilbert_ratios: data lies in V^m");
  std::vector<double> ratios;
  double acc = 0.0;
  for (int i = 0; i <= m + 1; ++i) {
    acc += s2[i];
    ratios.push_back(std::sqrt(acc) / top);
  }
  return ratios;
}

Projected<RifeFunction> l2_projection(int m, double alpha_hat, const JumpSequence& r, double w_minus, double w_plus,
                                      const PiecewiseSmooth& v) {
  checked_alpha_hat(alpha_hat);
  require(w_minus > 0.0 && w_plus > 0.0, ErrorCode::invalid_argument, "l2_projection: weights must be positive");
  const auto basis = canonical_basis(m, alpha_hat, r);
  const int n = m + 1;
  Eigen::MatrixXd G(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G(i, j) = inner(basis[i], basis[j], w_minus, w_plus);
    b(i) = weighted_data_moment(basis[i], 0, w_minus, w_plus, v, 0, alpha_hat);
  }
  const auto sol = solve_dense(G, b, "l2_projection");
  Projected<RifeFunction> out{from_solution(m, alpha_hat, r, sol.x.col(0)), {}};
  out.report.residual = (G * sol.x - b).cwiseAbs().maxCoeff();
  out.report.condition = sol.condition;
  check_data_jumps(m, alpha_hat, r, v, out.report);
  return out;
}

Projected<RifeFunction> lobatto_projection(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v) {
  checked_alpha_hat(alpha_hat);
  require(m >= 1, ErrorCode::invalid_argument, "lobatto_projection: degree must be at least 1");
  require(static_cast<int>(r.size()) >= m + 1, ErrorCode::invalid_argument, "lobatto_projection: jump sequence too short");
  require(std::abs(r[0] - 1.0) < 1e-14, ErrorCode::invalid_argument, "lobatto_projection: requires r_0 = 1");
  const auto basis = canonical_basis(m, alpha_hat, r);
  const JumpSequence r2 = r.shift(2);
  const int n = m + 1;
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  for (int j = 0; j < n; ++j) {
    A(0, j) = basis[j].eval(0.0, 0, Side::minus);
    A(1, j) = basis[j].eval(1.0, 0, Side::plus);
  }
  b(0) = v.eval(0.0, 0, Side::minus);
  b(1) = v.eval(1.0, 0, Side::plus);
  for (int k = 0; k + 2 < n; ++k) {
    const RifeFunction test = RifeFunction::canonical(m - 2, alpha_hat, r2, k);
    for (int j = 0; j < n; ++j)
      A(2 + k, j) = integrate_split(alpha_hat, default_points(m), [&](double x, Side s) {
        return (s == Side::minus ? r[1] : 1.0) * test.eval(x, 0, s) * basis[j].eval(x, 0, s);
      });
    b(2 + k) = weighted_data_moment(test, 0, r[1], 1.0, v, 0, alpha_hat);
  }
  const auto sol = solve_dense(A, b, "lobatto_projection");
  Projected<RifeFunction> out{from_solution(m, alpha_hat, r, sol.x.col(0)), {}};
  out.report.residual = (A * sol.x - b).cwiseAbs().maxCoeff();
  out.report.condition = sol.condition;
  check_data_jumps(m, alpha_hat, r, v, out.report);
  return out;
}

std::array<RifeFunction, 4> hermite_basis(double alpha_hat, double rho) {
  const JumpSequence r({1.0, 1.0, rho, rho});
  const auto basis = canonical_basis(3, alpha_hat, r);
  Eigen::Matrix4d D;
  for (int j = 0; j < 4; ++j) {
    D(0, j) = basis[j].eval(0.0, 0, Side::minus);
    D(1, j) = basis[j].eval(1.0, 0, Side::plus);
    D(2, j) = basis[j].eval(0.0, 1, Side::minus);
    D(3, j) = basis[j].eval(1.0, 1, Side::plus);
  }
  const auto sol = solve_dense(D, Eigen::MatrixXd::Identity(4, 4), "hermite_basis");
  return {from_solution(3, alpha_hat, r, sol.x.col(0)), from_solution(3, alpha_hat, r, sol.x.col(1)),
          from_solution(3, alpha_hat, r, sol.x.col(2)), from_solution(3, alpha_hat, r, sol.x.col(3))};
}

RifeFunction hermite_interpolate(double alpha_hat, double rho, const PiecewiseSmooth& v) {
  const auto L = hermite_basis(alpha_hat, rho);
  return L[0] * v.eval(0.0, 0, Side::minus) + L[1] * v.eval(1.0, 0, Side::plus) + L[2] * v.eval(0.0, 1, Side::minus) +
         L[3] * v.eval(1.0, 1, Side::plus);
}

std::vector<double> radau_noninterface(int m, Side outflow, const Smooth& v) {
  require(m >= 0, ErrorCode::invalid_argument, "radau_noninterface: degree must be nonnegative");
  const auto q = gauss_legendre(kDataPoints + m, 0.0, 1.0);
  std::vector<double> a(m + 1, 0.0);
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < q.points.size(); ++k) s += q.weights[k] * v(q.points[k]) * shifted_legendre(j, q.points[k]);
    a[j] = (2.0 * j + 1.0) * s;
  }
  const double x = outflow == Side::plus ? 1.0 : 0.0;
  double partial = 0.0;
  for (int j = 0; j < m; ++j) partial += a[j] * shifted_legendre(j, x);
  a[m] = (v(x) - partial) / shifted_legendre(m, x);
  return a;
}

Projected<std::vector<RifeFunction>> immersed_radau(int m, double alpha_hat, const ZoneMatrices& left,
                                                     const ZoneMatrices& right, const std::vector<JumpSequence>& jumps,
                                                     const std::vector<PiecewiseSmooth>& u) {
  checked_alpha_hat(alpha_hat);
  require(m >= 0, ErrorCode::invalid_argument, "immersed_radau: degree must be nonnegative");
  const int nc = left.components();
  require(right.components() == nc && static_cast<int>(jumps.size()) == nc && static_cast<int>(u.size()) == nc,
          ErrorCode::invalid_argument, "immersed_radau: component count mismatch");
  const int n = m + 1;
  std::vector<std::vector<RifeFunction>> basis;
  for (int q = 0; q < nc; ++q) basis.push_back(canonical_basis(m, alpha_hat, jumps[q]));

  const int N = nc * n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(N);
  int row = 0;
  auto endpoint_rows = [&](const ZoneMatrices& z, double x, Side side, bool negative) {
    for (int k = 0; k < nc; ++k) {
      if ((z.speeds(k) < 0.0) != negative || z.speeds(k) == 0.0) continue;
      require(row < N, ErrorCode::invalid_argument, "immersed_radau: too many outflow conditions");
      for (int q = 0; q < nc; ++q) {
        for (int j = 0; j < n; ++j) A(row, q * n + j) = z.Pinv(k, q) * basis[q][j].eval(x, 0, side);
        b(row) += z.Pinv(k, q) * u[q].eval(x, 0, side);
      }
      ++row;
    }
  };
  endpoint_rows(left, 0.0, Side::minus, true);
  endpoint_rows(right, 1.0, Side::plus, false);
  require(row + nc * m == N, ErrorCode::invalid_argument, "immersed_radau: outflow conditions do not close the system");

  for (int q = 0; q < nc; ++q) {
    const double wl = left.S(q, q), wr = right.S(q, q);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) A(row, q * n + j) = inner(basis[q][i], basis[q][j], wl, wr);
      b(row) = weighted_data_moment(basis[q][i], 0, wl, wr, u[q], 0, alpha_hat);
      ++row;
    }
  }
  const auto sol = solve_dense(A, b, "immersed_radau");
  Projected<std::vector<RifeFunction>> out;
  for (int q = 0; q < nc; ++q) out.value.push_back(from_solution(m, alpha_hat, jumps[q], sol.x.col(0), q * n));
  out.report.residual = (A * sol.x - b).cwiseAbs().maxCoeff();
  out.report.condition = sol.condition;
  for (int q = 0; q < nc; ++q) check_data_jumps(m, alpha_hat, jumps[q], u[q], out.report);
  return out;
}

}  // namespace ife1d
