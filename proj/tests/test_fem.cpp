// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ife1d/experiments.hpp"
#include "ife1d/fem.hpp"

using namespace ife1d;
using std::numbers::pi;

namespace {

double local_value(const FemFunction& u, int e, double xi, int k) {
  double v = 0.0;
  for (std::size_t j = 0; j < u.basis[e].size(); ++j) {
    const int g = u.dofs[e][j];
    if (g < 0) continue;
    v += u.coeffs(g) * u.scale[e][j] * u.basis[e][j](xi, k);
  }
  return v / std::pow(u.mesh.h(), k);
}

double max_node_jump(const FemFunction& u, int k) {
  double worst = 0.0;
  for (int e = 0; e + 1 < u.mesh.num_elements(); ++e)
    worst = std::max(worst, std::abs(local_value(u, e, 1.0, k) - local_value(u, e + 1, 0.0, k)));
  return worst;
}

PiecewiseSmooth same(double alpha, const Smooth& s) { return {alpha, s, s}; }

}  // namespace

TEST_CASE("elliptic jumps") {
  const auto r = elliptic_jumps(3, 1.0, 5.0);
  CHECK(r.values() == std::vector<double>{1.0, 0.2, 0.2, 0.2});
}

TEST_CASE("elliptic solver without interface contrast") {
  const double alpha = pi / 6, beta = 2.0;
  const auto u = same(alpha, Smooth::sine(1.0, pi));
  const auto f = same(alpha, Smooth::sine(beta * pi * pi, pi));
  for (int m = 1; m <= 3; ++m) {
    std::vector<double> e;
    for (int n : {8, 16, 32, 64, 128}) {
      const auto res = solve_elliptic({0.0, 1.0, alpha, beta, beta, f}, n, m);
      CHECK(res.residual < 1e-9);
      e.push_back(fem_error(res.u, u, 0));
      CHECK(max_node_jump(res.u, 0) < 1e-11);
    }
    const auto ord = observed_orders(e);
    CHECK(ord[2] == doctest::Approx(m + 1).epsilon(0.3 / (m + 1)));
  }
}

TEST_CASE("elliptic solver reproduces a member of the IFE space") {
  // piecewise quadratic with [u] = [beta u'] = 0 and u(0) = u(1) = 0; forcing is constant
  const double alpha = 0.37, bm = 1.0, bp = 4.0, q = bm / bp;
  // left: c0 + c1 (x - a) + c2 (x - a)^2, right: c0 + q c1 (x - a) + q c2 (x - a)^2, fix c2 = 1
  Eigen::Matrix2d A;
  A << 1.0, -alpha, 1.0, q * (1.0 - alpha);
  const Eigen::Vector2d rhs(-alpha * alpha, -q * (1.0 - alpha) * (1.0 - alpha));
  const Eigen::Vector2d c = A.lu().solve(rhs);
  const PiecewiseSmooth u{alpha, Smooth::polynomial(alpha, {c(0), c(1), 1.0}), Smooth::polynomial(alpha, {c(0), q * c(1), q})};
  const PiecewiseSmooth f{alpha, Smooth::constant(-2.0 * bm), Smooth::constant(-2.0 * bm)};
  for (int m : {2, 3}) {
    const auto res = solve_elliptic({0.0, 1.0, alpha, bm, bp, f}, 9, m);
    CHECK(fem_error(res.u, u, 1) < 1e-11);
  }
}

TEST_CASE("elliptic interface convergence") {
  for (int m = 1; m <= 3; ++m) {
    const auto mf = manufactured_elliptic(0.0, 1.0, pi / 6, 1.0, 5.0, m);
    CHECK(std::abs(mf.u(0.0)) < 1e-12);
    CHECK(std::abs(mf.u(1.0)) < 1e-12);
    CHECK(mf.u.right(pi / 6) == doctest::Approx(mf.u.left(pi / 6)));
    CHECK(5.0 * mf.u.right(pi / 6, 1) == doctest::Approx(mf.u.left(pi / 6, 1)));
    std::vector<double> e, h;
    for (int n : {16, 32, 64, 128}) {
      const auto res = solve_elliptic({0.0, 1.0, pi / 6, 1.0, 5.0, mf.f}, n, m);
      CHECK(res.residual < 1e-9);
      e.push_back(fem_error(res.u, mf.u, 0));
      h.push_back(1.0 / n);
    }
    CHECK(fitted_order(h, e) == doctest::Approx(m + 1).epsilon(0.3 / (m + 1)));
  }
}

TEST_CASE("beam solver without interface contrast") {
  const double beta = 3.0, w = 2 * pi;
  const auto u = same(0.3, Smooth::constant(0.5) + Smooth::sine(-0.5, w, pi / 2));
  const auto f = same(0.3, Smooth::sine(-0.5 * beta * std::pow(w, 4), w, pi / 2));
  std::vector<double> e0, e2, h;
  for (int n : {8, 16, 32, 64}) {
    const auto res = solve_beam({0.0, 1.0, 0.3, beta, beta, f}, n);
    CHECK(res.residual < 1e-9);
    CHECK(max_node_jump(res.u, 0) < 1e-11);
    CHECK(max_node_jump(res.u, 1) < 1e-9);
    e0.push_back(fem_error(res.u, u, 0));
    e2.push_back(fem_error(res.u, u, 2));
    h.push_back(1.0 / n);
  }
  CHECK(fitted_order(h, e0) == doctest::Approx(4.0).epsilon(0.3 / 4));
  CHECK(fitted_order(h, e2) == doctest::Approx(2.0).epsilon(0.3 / 2));
}

TEST_CASE("beam with an interface") {
  const auto mf = manufactured_beam(0.0, 1.0, pi / 6, 1.0, 5.0);
  for (int k : {0, 1}) {
    CHECK(std::abs(mf.u(0.0, k)) < 1e-12);
    CHECK(std::abs(mf.u.right(1.0, k)) < 1e-12);
  }
  std::vector<double> h, e, ei[3];
  for (int n : {16, 32, 64, 128}) {
    const auto res = solve_beam({0.0, 1.0, pi / 6, 1.0, 5.0, mf.f}, n);
    CHECK(res.residual < 1e-9);
    CHECK(max_node_jump(res.u, 0) < 1e-11);
    CHECK(max_node_jump(res.u, 1) < 1e-8);
    e.push_back(fem_error(res.u, mf.u, 0));
    const auto I = hermite_global_interpolant(InterfaceMesh(0.0, 1.0, n, {pi / 6}), 0.2, mf.u);
    for (int i = 0; i <= 2; ++i) ei[i].push_back(fem_error(I, mf.u, i));
    h.push_back(1.0 / n);
  }
  CHECK(fitted_order(h, e) > 3.7);
  // the interpolation estimate h^{3-i} holds as a lower bound on the observed order
  for (int i = 0; i <= 2; ++i) CHECK(fitted_order(h, ei[i]) >= 3 - i - 0.3);
}
