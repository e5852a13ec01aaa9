// SPDX-License-Identifier: Apache-2.0
#include "ife1d/fem.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>

#include "ife1d/error.hpp"
#include "ife1d/projections.hpp"
#include "ife1d/quadrature.hpp"

namespace ife1d {

namespace {

struct Piece {
  double a, b;
  Side side;
};

std::vector<Piece> element_pieces(const InterfaceMesh& mesh, int e) {
  const int i = mesh.interface_in(e);
  if (i < 0) return {{0.0, 1.0, Side::minus}};
  const double ah = mesh.interfaces()[i].alpha_hat;
  return {{0.0, ah, Side::minus}, {ah, 1.0, Side::plus}};
}

// Coefficient on a piece: pieces right of the interface, or whole elements right of it, use the plus value.
double piece_value(const InterfaceMesh& mesh, int e, Side side, double minus, double plus) {
  if (mesh.interface_in(e) >= 0) return side == Side::minus ? minus : plus;
  return mesh.zone_left(e) == 0 ? minus : plus;
}

struct Assembly {
  std::vector<Eigen::Triplet<double>> K;
  Eigen::VectorXd F;
};

FemResult solve_system(FemFunction fn, int nfree, const TwoPhaseProblem& p, int order) {
  const InterfaceMesh& mesh = fn.mesh;
  const double h = mesh.h();
  Assembly as{{}, Eigen::VectorXd::Zero(nfree)};
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& bs = fn.basis[e];
    const int nl = static_cast<int>(bs.size());
    Eigen::MatrixXd Kl = Eigen::MatrixXd::Zero(nl, nl);
    Eigen::VectorXd Fl = Eigen::VectorXd::Zero(nl);
    for (const auto& pc : element_pieces(mesh, e)) {
      const double beta = piece_value(mesh, e, pc.side, p.beta_minus, p.beta_plus);
      const auto qr = gauss_legendre(kDataPoints, pc.a, pc.b);
      for (int k = 0; k < kDataPoints; ++k) {
        const double xi = qr.points[k], x = mesh.left(e) + h * xi;
        const double fx = p.f.eval(x, 0, x <= p.alpha ? Side::minus : Side::plus);
        for (int i = 0; i < nl; ++i) {
          const double di = fn.scale[e][i] * bs[i].eval(xi, order, pc.side);
          Fl(i) += qr.weights[k] * h * fx * fn.scale[e][i] * bs[i].eval(xi, 0, pc.side);
          for (int j = 0; j < nl; ++j)
            Kl(i, j) += qr.weights[k] * beta * di * fn.scale[e][j] * bs[j].eval(xi, order, pc.side) /
                        std::pow(h, 2 * order - 1);
        }
      }
    }
    for (int i = 0; i < nl; ++i) {
      const int gi = fn.dofs[e][i];
      if (gi < 0) continue;
      as.F(gi) += Fl(i);
      for (int j = 0; j < nl; ++j)
        if (fn.dofs[e][j] >= 0) as.K.emplace_back(gi, fn.dofs[e][j], Kl(i, j));
    }
  }
  Eigen::SparseMatrix<double> K(nfree, nfree);
  K.setFromTriplets(as.K.begin(), as.K.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
  require(solver.info() == Eigen::Success, ErrorCode::singular, "finite element system is singular");
  const Eigen::VectorXd u = solver.solve(as.F);
  require(solver.info() == Eigen::Success, ErrorCode::solver, "finite element solve failed");
  const double fn_norm = std::max(as.F.cwiseAbs().maxCoeff(), 1e-300);
  fn.coeffs = u;
  return {std::move(fn), (K * u - as.F).cwiseAbs().maxCoeff() / fn_norm};
}

FemFunction hermite_layout(const InterfaceMesh& mesh, double rho, bool clamped, int& nfree) {
  const int N = mesh.num_elements();
  const double h = mesh.h();
  std::vector<int> map(2 * (N + 1));
  nfree = 0;
  for (int v = 0; v <= N; ++v)
    for (int s = 0; s < 2; ++s) map[2 * v + s] = (clamped && (v == 0 || v == N)) ? -1 : nfree++;
  const auto regular = hermite_basis(0.5, 1.0);
  FemFunction fn{mesh, {}, {}, {}, {}};
  for (int e = 0; e < N; ++e) {
    const int i = mesh.interface_in(e);
    const auto L = i < 0 ? regular : hermite_basis(mesh.interfaces()[i].alpha_hat, rho);
    fn.basis.push_back({L[0], L[1], L[2], L[3]});
    fn.dofs.push_back({map[2 * e], map[2 * e + 2], map[2 * e + 1], map[2 * e + 3]});
    fn.scale.push_back({1.0, 1.0, h, h});
  }
  return fn;
}

}  // namespace

double FemFunction::operator()(double x, int k) const {
  const int e = mesh.element_of(x);
  const double xi = (x - mesh.left(e)) / mesh.h();
  const double ah = basis[e][0].alpha_hat();
  const Side side = (mesh.interface_in(e) >= 0 && xi > ah) ? Side::plus : Side::minus;
  double s = 0.0;
  for (std::size_t i = 0; i < basis[e].size(); ++i)
    if (dofs[e][i] >= 0) s += scale[e][i] * coeffs(dofs[e][i]) * basis[e][i].eval(xi, k, side);
  return s / std::pow(mesh.h(), k);
}

double fem_error(const FemFunction& v, const PiecewiseSmooth& u, int i) {
  const auto& mesh = v.mesh;
  const double h = mesh.h();
  double s = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (const auto& pc : element_pieces(mesh, e)) {
      const auto qr = gauss_legendre(kDataPoints, pc.a, pc.b);
      for (int q = 0; q < kDataPoints; ++q) {
        const double xi = qr.points[q], x = mesh.left(e) + h * xi;
        for (int k = 0; k <= i; ++k) {
          double vh = 0.0;
          for (std::size_t j = 0; j < v.basis[e].size(); ++j)
            if (v.dofs[e][j] >= 0) vh += v.scale[e][j] * v.coeffs(v.dofs[e][j]) * v.basis[e][j].eval(xi, k, pc.side);
          const double d = vh / std::pow(h, k) - u.eval(x, k, x <= u.alpha ? Side::minus : Side::plus);
          s += qr.weights[q] * h * d * d;
        }
      }
    }
  return std::sqrt(s);
}

JumpSequence elliptic_jumps(int m, double beta_minus, double beta_plus) {
  require(beta_minus > 0.0 && beta_plus > 0.0, ErrorCode::invalid_argument, "coefficients must be positive");
  std::vector<double> r(m + 1, beta_minus / beta_plus);
  r[0] = 1.0;
  return JumpSequence(std::move(r));
}

FemResult solve_elliptic(const TwoPhaseProblem& p, int n, int m) {
  require(m >= 1, ErrorCode::invalid_argument, "elliptic degree must be at least 1");
  const InterfaceMesh mesh(p.a, p.b, n, {p.alpha});
  const JumpSequence r = elliptic_jumps(m, p.beta_minus, p.beta_plus);
  std::vector<double> nodes{0.0, 1.0};
  const auto gll = gauss_lobatto_nodes(m + 1);
  for (int i = 1; i < m; ++i) nodes.push_back(gll[i]);
  const auto regular = lagrange_basis(m, 0.5, JumpSequence::ones(m + 1), nodes);

  const int N = mesh.num_elements();
  auto vertex = [&](int v) { return (v == 0 || v == N) ? -1 : v - 1; };
  FemFunction fn{mesh, {}, {}, {}, {}};
  for (int e = 0; e < N; ++e) {
    const int i = mesh.interface_in(e);
    fn.basis.push_back(i < 0 ? regular : lagrange_basis(m, mesh.interfaces()[i].alpha_hat, r, nodes));
    std::vector<int> d{vertex(e), vertex(e + 1)};
    for (int k = 0; k < m - 1; ++k) d.push_back((N - 1) + e * (m - 1) + k);
    fn.dofs.push_back(std::move(d));
    fn.scale.emplace_back(m + 1, 1.0);
  }
  return solve_system(std::move(fn), (N - 1) + N * (m - 1), p, 1);
}

FemResult solve_beam(const TwoPhaseProblem& p, int n) {
  const InterfaceMesh mesh(p.a, p.b, n, {p.alpha});
  int nfree = 0;
  FemFunction fn = hermite_layout(mesh, p.beta_minus / p.beta_plus, true, nfree);
  return solve_system(std::move(fn), nfree, p, 2);
}

FemFunction hermite_global_interpolant(const InterfaceMesh& mesh, double rho, const PiecewiseSmooth& u) {
  int nfree = 0;
  FemFunction fn = hermite_layout(mesh, rho, false, nfree);
  fn.coeffs.resize(nfree);
  for (int v = 0; v <= mesh.num_elements(); ++v) {
    fn.coeffs(2 * v) = u(mesh.nodes()[v], 0);
    fn.coeffs(2 * v + 1) = u(mesh.nodes()[v], 1);
  }
  return fn;
}

Manufactured manufactured_elliptic(double a, double b, double alpha, double beta_minus, double beta_plus, int m) {
  require(a < alpha && alpha < b, ErrorCode::invalid_argument, "interface must lie inside the domain");
  const JumpSequence r = elliptic_jumps(m, beta_minus, beta_plus);
  const Smooth g = Smooth::sine(1.0, 2.0, -2.0 * a) + Smooth::polynomial(a, {0.0, 0.0, 0.5});
  const Smooth ext = jump_extension(g, alpha, r.values(), m);
  std::vector<double> top(m + 2, 0.0);
  top[m + 1] = 1.0;
  const Smooth bump = Smooth::polynomial(alpha, top);
  const double d = std::pow(b - alpha, m + 1);
  const double K = -ext(b) / d - 0.3 * std::sin(b);
  const Smooth right = ext + bump * (Smooth::constant(K) + Smooth::sine(0.3, 1.0));
  Manufactured out;
  out.u = {alpha, g, right};
  out.f = {alpha, g.derivative(2).scaled(-beta_minus), right.derivative(2).scaled(-beta_plus)};
  return out;
}

Manufactured manufactured_beam(double a, double b, double alpha, double beta_minus, double beta_plus) {
  require(a < alpha && alpha < b, ErrorCode::invalid_argument, "interface must lie inside the domain");
  const double rho = beta_minus / beta_plus;
  const Smooth g = Smooth::polynomial(a, {0.0, 0.0, 1.0}) * (Smooth::constant(1.0) + Smooth::sine(0.5, 3.0));
  const Smooth ext = jump_extension(g, alpha, {1.0, 1.0, rho, rho}, 3);
  const double d = b - alpha;
  // Solve for K1, K2 in ext + K1 (x-alpha)^4 + K2 (x-alpha)^5 with zero value and slope at b.
  Eigen::Matrix2d A;
  A << std::pow(d, 4), std::pow(d, 5), 4.0 * std::pow(d, 3), 5.0 * std::pow(d, 4);
  const Eigen::Vector2d k = A.lu().solve(Eigen::Vector2d(-ext(b), -ext(b, 1)));
  const Smooth right = ext + Smooth::polynomial(alpha, {0.0, 0.0, 0.0, 0.0, k(0), k(1)});
  Manufactured out;
  out.u = {alpha, g, right};
  out.f = {alpha, g.derivative(4).scaled(beta_minus), right.derivative(4).scaled(beta_plus)};
  return out;
}

}  // namespace ife1d
