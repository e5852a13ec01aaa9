// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ife1d/acoustic.hpp"
#include "ife1d/error.hpp"
#include "ife1d/projections.hpp"
#include "ife1d/quadrature.hpp"
#include "support.hpp"

using namespace ife1d;
using testing::uniform;

namespace {

// Integral of f(x, side) over [lo, hi] split at alpha with a high-order rule.
template <class F>
double split_integral(double lo, double hi, double alpha, F&& f) {
  double s = 0.0;
  const auto ql = gauss_legendre(30, lo, alpha), qr = gauss_legendre(30, alpha, hi);
  for (int k = 0; k < 30; ++k) {
    s += ql.weights[k] * f(ql.points[k], Side::minus);
    s += qr.weights[k] * f(qr.points[k], Side::plus);
  }
  return s;
}

// k-th derivative of r_side (x - alpha)^j
double mono(double x, double alpha, int j, int k, double rj, Side side) {
  if (k > j) return 0.0;
  double c = 1.0;
  for (int t = 0; t < k; ++t) c *= j - t;
  return (side == Side::plus ? rj : 1.0) * c * std::pow(x - alpha, j - k);
}

double reproduction_error(const RifeFunction& a, const RifeFunction& b) { return testing::coeff_distance(a, b); }

}  // namespace

TEST_CASE("moment projection reproduces the IFE space") {
  double worst = 0.0, residual = 0.0;
  for (int t = 0; t < 60; ++t) {
    const int m = t % 5;
    const double ah = uniform(0.01, 0.99);
    const JumpSequence r(testing::random_jumps(m));
    const RifeFunction f(m, ah, r, testing::random_coeffs(m));
    const auto p = moment_projection(m, ah, r, testing::as_piecewise(f));
    worst = std::max(worst, reproduction_error(p.value, f));
    residual = std::max(residual, p.report.residual);
    CHECK(p.report.warnings.empty());
  }
  CHECK(worst < 1e-12);
  CHECK(residual < 1e-10);
}

TEST_CASE("moment projection for degree zero") {
  for (double ah : {0.2, 0.6}) {
    const JumpSequence r({2.5});
    const auto v = testing::admissible(testing::wave(), ah, r.values(), 0);
    const auto p = moment_projection(0, ah, r, v);
    const double w0v = split_integral(0.0, 1.0, ah, [&](double x, Side s) { return (s == Side::minus ? r[0] : 1.0) * v.eval(x, 0, s); });
    // diagonal (w_0, N^0) = r_0 ah + r_0 (1 - ah)
    CHECK(p.value.coeffs()[0] == doctest::Approx(w0v / r[0]).epsilon(1e-12));
  }
}

TEST_CASE("moment projection without interface matches the classical moment conditions") {
  const int m = 3;
  const PiecewiseSmooth v{0.4, testing::wave(), testing::wave()};
  const auto p = moment_projection(m, 0.4, JumpSequence::ones(m + 1), v);
  for (int k = 0; k <= m; ++k) {
    const double d = split_integral(0.0, 1.0, 0.4, [&](double x, Side s) { return v.eval(x, k, s) - p.value.eval(x, k, s); });
    CHECK(std::abs(d) < 1e-12);
  }
}

TEST_CASE("moment projection warns on inadmissible data") {
  const PiecewiseSmooth v{0.5, Smooth::constant(1.0), Smooth::constant(4.0)};
  const auto p = moment_projection(1, 0.5, JumpSequence({2.0, 1.0}), v);
  CHECK_FALSE(p.report.warnings.empty());
}

TEST_CASE("Bramble-Hilbert ratios") {
  // identity jumps: cross-check the ratios with an independent evaluation of the error norms
  {
    const int m = 2;
    const PiecewiseSmooth v{0.5, Smooth::sine(1.0, std::numbers::pi), Smooth::sine(1.0, std::numbers::pi)};
    const auto r = JumpSequence::ones(m + 1);
    const auto ratios = bramble_hilbert_ratios(m, 0.5, r, v);
    const auto p = moment_projection(m, 0.5, r, v).value;
    std::vector<double> semi(m + 2);
    for (int k = 0; k <= m + 1; ++k)
      semi[k] = split_integral(0.0, 1.0, 0.5, [&](double x, Side s) { return std::pow(v.eval(x, k, s) - p.eval(x, k, s), 2); });
    double full = 0.0;
    for (int i = 0; i <= m + 1; ++i) {
      full += semi[i];
      CHECK(ratios[i] == doctest::Approx(std::sqrt(full / semi[m + 1])).epsilon(1e-8));
    }
  }
  // manufactured bank
  int violations = 0;
  for (int t = 0; t < 60; ++t) {
    const int m = t % 4;
    const double ah = uniform(0.02, 0.98);
    const JumpSequence r(testing::random_jumps(m, 0.25, 4.0));
    const Smooth g = t % 2 ? Smooth::exponential(1.0, 1.0) : testing::wave();
    const auto v = testing::admissible(g, ah, r.values(), m, uniform(-2.0, 2.0));
    const auto ratios = bramble_hilbert_ratios(m, ah, r, v);
    const double C = bramble_hilbert_constant(m, r);
    for (double q : ratios)
      if (q > C) ++violations;
  }
  CHECK(violations == 0);
  const JumpSequence r({1.0, 2.0});
  const RifeFunction f(1, 0.3, r, {1.0, -0.5});
  // members of the space have no top seminorm to normalise by
  CHECK_THROWS_AS(bramble_hilbert_ratios(1, 0.3, r, testing::as_piecewise(f)), Error);
}

TEST_CASE("L2 projection") {
  {
    const PiecewiseSmooth v{0.5, Smooth::polynomial(0.0, {0.0, 1.0}), Smooth::polynomial(0.0, {0.0, 1.0})};
    CHECK(l2_projection(0, 0.5, JumpSequence::ones(1), 1.0, 1.0, v).value.coeffs()[0] == doctest::Approx(0.5));
  }
  {
    // dense normal equations oracle
    const double ah = 0.3;
    const JumpSequence r({1.0, 2.0});
    const PiecewiseSmooth v{ah, Smooth::sine(1.0, 1.0), Smooth::sine(1.0, 1.0)};
    Eigen::Matrix2d G;
    Eigen::Vector2d b;
    for (int i = 0; i < 2; ++i) {
      b(i) = split_integral(0.0, 1.0, ah, [&](double x, Side s) { return mono(x, ah, i, 0, r[i], s) * v.eval(x, 0, s); });
      for (int j = 0; j < 2; ++j)
        G(i, j) = split_integral(0.0, 1.0, ah, [&](double x, Side s) { return mono(x, ah, i, 0, r[i], s) * mono(x, ah, j, 0, r[j], s); });
    }
    const Eigen::Vector2d c = G.lu().solve(b);
    const auto p = l2_projection(1, ah, r, 1.0, 1.0, v);
    CHECK(p.value.coeffs()[0] == doctest::Approx(c(0)).epsilon(1e-11));
    CHECK(p.value.coeffs()[1] == doctest::Approx(c(1)).epsilon(1e-11));
    CHECK(p.report.residual < 1e-11);
  }
  for (int t = 0; t < 30; ++t) {
    const int m = t % 5;
    const double ah = uniform(0.01, 0.99);
    const JumpSequence r(testing::random_jumps(m));
    const RifeFunction f(m, ah, r, testing::random_coeffs(m));
    CHECK(reproduction_error(l2_projection(m, ah, r, uniform(0.5, 2.0), 1.0, testing::as_piecewise(f)).value, f) < 1e-11);
  }
}

TEST_CASE("Lobatto projection") {
  CHECK_THROWS_AS(lobatto_projection(2, 0.5, JumpSequence({2.0, 1.0, 1.0}), PiecewiseSmooth{0.5, Smooth::constant(1), Smooth::constant(2)}),
                  Error);
  for (int t = 0; t < 40; ++t) {
    const int m = 1 + t % 4;
    const double ah = uniform(0.01, 0.99), q = uniform(0.1, 10.0);
    std::vector<double> rr(m + 1, q);
    rr[0] = 1.0;
    const JumpSequence r(rr);
    const auto v = testing::admissible(testing::wave(), ah, rr, m);
    const auto p = lobatto_projection(m, ah, r, v);
    CHECK(std::abs(p.value(0.0) - v(0.0)) < 1e-12);
    CHECK(std::abs(p.value(1.0) - v(1.0)) < 1e-12);
    CHECK(p.report.residual < 1e-10);
    const RifeFunction f(m, ah, r, testing::random_coeffs(m));
    CHECK(reproduction_error(lobatto_projection(m, ah, r, testing::as_piecewise(f)).value, f) < 1e-11);
  }
  // without interface: endpoint interpolation plus orthogonality of the derivative error to P^{m-2}
  const int m = 3;
  const PiecewiseSmooth v{0.5, testing::wave(), testing::wave()};
  const auto p = lobatto_projection(m, 0.5, JumpSequence::ones(m + 1), v).value;
  for (int j = 0; j <= m - 2; ++j) {
    const double d =
        split_integral(0.0, 1.0, 0.5, [&](double x, Side s) { return (v.eval(x, 1, s) - p.eval(x, 1, s)) * std::pow(x, j); });
    CHECK(std::abs(d) < 1e-12);
  }
}

TEST_CASE("Hermite basis") {
  const auto L = hermite_basis(0.4, 1.0);
  for (double x : {0.0, 0.25, 0.6, 1.0}) {
    CHECK(L[0](x) == doctest::Approx((1 - x) * (1 - x) * (1 + 2 * x)));
    CHECK(L[1](x) == doctest::Approx(x * x * (3 - 2 * x)));
    CHECK(L[2](x) == doctest::Approx(x * (1 - x) * (1 - x)));
    CHECK(L[3](x) == doctest::Approx(x * x * (x - 1)));
  }
  double dof_err = 0.0;
  bool inside = true;
  for (double rho : {0.1, 0.5, 2.0, 10.0})
    for (int k = 1; k <= 99; ++k) {
      const double ah = k / 100.0;
      const auto B = hermite_basis(ah, rho);
      for (int j = 0; j < 4; ++j) {
        const double s[4] = {B[j](0.0), B[j](1.0), B[j](0.0, 1), B[j](1.0, 1)};
        for (int i = 0; i < 4; ++i) dof_err = std::max(dof_err, std::abs(s[i] - (i == j ? 1.0 : 0.0)));
        for (int g = 0; g <= 10000; ++g) {
          const double v = B[j](g / 10000.0);
          if (g == 0 || g == 10000 ? std::abs(v) > 1.0 + 1e-12 : !(v > -1.0 && v < 1.0)) inside = false;
        }
      }
      // reflection symmetry with reciprocal jumps
      const auto R = hermite_basis(1.0 - ah, 1.0 / rho);
      for (double x : {0.0, 0.13, ah, 0.71, 1.0}) CHECK(std::abs(B[3](x) + R[2](1.0 - x)) < 1e-11);
    }
  CHECK(dof_err < 1e-10);
  CHECK(inside);
}

TEST_CASE("Hermite interpolation reproduces cubic IFE functions") {
  for (int t = 0; t < 30; ++t) {
    const double ah = uniform(0.01, 0.99), rho = uniform(0.1, 10.0);
    const RifeFunction f(3, ah, JumpSequence({1.0, 1.0, rho, rho}), testing::random_coeffs(3));
    CHECK(reproduction_error(hermite_interpolate(ah, rho, testing::as_piecewise(f)), f) < 1e-11);
  }
  const PiecewiseSmooth cubic{0.5, Smooth::polynomial(0.0, {1.0, -2.0, 0.5, 3.0}), Smooth::polynomial(0.0, {1.0, -2.0, 0.5, 3.0})};
  const auto h = hermite_interpolate(0.5, 1.0, cubic);
  for (double x : {0.1, 0.7}) CHECK(h(x) == doctest::Approx(cubic(x)));
}

TEST_CASE("Radau projection without interface") {
  const Smooth sq = Smooth::polynomial(0.0, {0.0, 0.0, 1.0});
  const auto right = radau_noninterface(1, Side::plus, sq);
  CHECK(right[0] == doctest::Approx(1.0 / 3));
  CHECK(right[1] == doctest::Approx(2.0 / 3));
  const auto left = radau_noninterface(1, Side::minus, sq);
  CHECK(left[0] == doctest::Approx(1.0 / 3));
  CHECK(left[1] == doctest::Approx(1.0 / 3));
  // polynomials are reproduced
  const Smooth p3 = Smooth::polynomial(0.2, {0.3, -1.0, 2.0, 0.7});
  const auto c = radau_noninterface(3, Side::plus, p3);
  for (double x : {0.0, 0.4, 1.0}) {
    double v = 0.0;
    for (int j = 0; j <= 3; ++j) v += c[j] * shifted_legendre(j, x);
    CHECK(v == doctest::Approx(p3(x)).epsilon(1e-12));
  }
}

TEST_CASE("immersed Radau projection for acoustics") {
  const MaterialParams mat{1.0, 1.0, 1.0, 2.0};
  const auto M = build_matrices(mat);
  SUBCASE("dense oracle, m = 1") {
    const int m = 1;
    const double ah = 0.3;
    const auto J = jump_coefficients(m, mat);
    const std::vector<JumpSequence> jumps{J.pressure, J.velocity};
    const auto vp = testing::admissible(testing::wave(), ah, J.pressure.values(), m);
    const auto vu = testing::admissible(Smooth::exponential(0.5, 0.7), ah, J.velocity.values(), m, -0.4);
    const auto pr = immersed_radau(m, ah, M.minus, M.plus, jumps, {vp, vu});
    // unknowns (p0, p1, u0, u1)
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    Eigen::Vector4d b = Eigen::Vector4d::Zero();
    int row = 0;
    auto val = [&](int q, int j, double x, Side s) { return mono(x, ah, j, 0, jumps[q][j], s); };
    for (int k = 0; k < 2; ++k)
      if (M.minus.speeds(k) < 0) {
        for (int q = 0; q < 2; ++q)
          for (int j = 0; j <= m; ++j) A(row, 2 * q + j) = M.minus.Pinv(k, q) * val(q, j, 0.0, Side::minus);
        b(row++) = M.minus.Pinv(k, 0) * vp(0.0) + M.minus.Pinv(k, 1) * vu(0.0);
      }
    for (int k = 0; k < 2; ++k)
      if (M.plus.speeds(k) > 0) {
        for (int q = 0; q < 2; ++q)
          for (int j = 0; j <= m; ++j) A(row, 2 * q + j) = M.plus.Pinv(k, q) * val(q, j, 1.0, Side::plus);
        b(row++) = M.plus.Pinv(k, 0) * vp.eval(1.0, 0, Side::plus) + M.plus.Pinv(k, 1) * vu.eval(1.0, 0, Side::plus);
      }
    for (int q = 0; q < 2; ++q) {
      const auto& v = q == 0 ? vp : vu;
      auto w = [&](Side s) { return s == Side::minus ? M.minus.S(q, q) : M.plus.S(q, q); };
      for (int j = 0; j <= m; ++j)
        A(row, 2 * q + j) = split_integral(0.0, 1.0, ah, [&](double x, Side s) { return w(s) * val(q, 0, x, s) * val(q, j, x, s); });
      b(row++) = split_integral(0.0, 1.0, ah, [&](double x, Side s) { return w(s) * val(q, 0, x, s) * v.eval(x, 0, s); });
    }
    REQUIRE(row == 4);
    const Eigen::Vector4d c = A.lu().solve(b);
    CHECK(pr.value[0].coeffs()[0] == doctest::Approx(c(0)).epsilon(1e-11));
    CHECK(pr.value[0].coeffs()[1] == doctest::Approx(c(1)).epsilon(1e-11));
    CHECK(pr.value[1].coeffs()[0] == doctest::Approx(c(2)).epsilon(1e-11));
    CHECK(pr.value[1].coeffs()[1] == doctest::Approx(c(3)).epsilon(1e-11));
  }
  SUBCASE("reproduction and characteristic residuals") {
    for (int t = 0; t < 30; ++t) {
      const int m = 1 + t % 3;
      const double ah = uniform(0.01, 0.99);
      const MaterialParams mt{uniform(0.5, 3.0), uniform(0.5, 3.0), uniform(0.5, 3.0), uniform(0.5, 3.0)};
      const auto Mt = build_matrices(mt);
      const auto J = jump_coefficients(m, mt);
      const std::vector<JumpSequence> jumps{J.pressure, J.velocity};
      const RifeFunction fp(m, ah, J.pressure, testing::random_coeffs(m)), fu(m, ah, J.velocity, testing::random_coeffs(m));
      const auto same = immersed_radau(m, ah, Mt.minus, Mt.plus, jumps, {testing::as_piecewise(fp), testing::as_piecewise(fu)});
      CHECK(reproduction_error(same.value[0], fp) < 1e-11);
      CHECK(reproduction_error(same.value[1], fu) < 1e-11);

      const auto vp = testing::admissible(testing::wave(), ah, J.pressure.values(), m);
      const auto vu = testing::admissible(Smooth::sine(0.7, 3.0, 0.2), ah, J.velocity.values(), m, 1.3);
      const auto pr = immersed_radau(m, ah, Mt.minus, Mt.plus, jumps, {vp, vu});
      CHECK(pr.report.residual < 1e-10);
      const Eigen::Vector2d e0(pr.value[0](0.0) - vp(0.0), pr.value[1](0.0) - vu(0.0));
      const Eigen::Vector2d e1(pr.value[0].eval(1.0, 0, Side::plus) - vp.eval(1.0, 0, Side::plus),
                               pr.value[1].eval(1.0, 0, Side::plus) - vu.eval(1.0, 0, Side::plus));
      const Eigen::Vector2d w0 = Mt.minus.Pinv * e0, w1 = Mt.plus.Pinv * e1;
      for (int k = 0; k < 2; ++k) {
        if (Mt.minus.speeds(k) < 0) CHECK(std::abs(w0(k)) < 1e-10);
        if (Mt.plus.speeds(k) > 0) CHECK(std::abs(w1(k)) < 1e-10);
      }
    }
  }
}

TEST_CASE("projections are linear") {
  const double ah = 0.37;
  const int m = 3;
  const JumpSequence r({1.0, 0.4, 0.4, 0.4});
  const auto v = testing::admissible(testing::wave(), ah, r.values(), m);
  const auto w = testing::admissible(Smooth::exponential(1.0, -0.5), ah, r.values(), m, -1.0);
  const double a = 1.7, b = -0.6;
  const PiecewiseSmooth comb{ah, v.left.scaled(a) + w.left.scaled(b), v.right.scaled(a) + w.right.scaled(b)};
  auto check = [&](auto&& P) {
    const RifeFunction lhs = P(comb), rhs = P(v) * a + P(w) * b;
    CHECK(testing::coeff_distance(lhs, rhs) < 1e-11);
  };
  check([&](const PiecewiseSmooth& x) { return moment_projection(m, ah, r, x).value; });
  check([&](const PiecewiseSmooth& x) { return l2_projection(m, ah, r, 1.0, 1.0, x).value; });
  check([&](const PiecewiseSmooth& x) { return lobatto_projection(m, ah, r, x).value; });
  const JumpSequence rh({1.0, 1.0, 0.4, 0.4});
  const auto vh = testing::admissible(testing::wave(), ah, rh.values(), 3);
  const auto wh = testing::admissible(Smooth::exponential(1.0, -0.5), ah, rh.values(), 3, -1.0);
  const PiecewiseSmooth ch{ah, vh.left.scaled(a) + wh.left.scaled(b), vh.right.scaled(a) + wh.right.scaled(b)};
  CHECK(testing::coeff_distance(hermite_interpolate(ah, 0.4, ch),
                                hermite_interpolate(ah, 0.4, vh) * a + hermite_interpolate(ah, 0.4, wh) * b) < 1e-11);
}

TEST_CASE("physical and reference projections commute") {
  // project on [x0, x0 + h] with the physical basis (x - alpha)^k, then rescale coefficients by h^k
  for (int t = 0; t < 20; ++t) {
    const int m = 1 + t % 3;
    const double x0 = uniform(-2.0, 2.0), h = std::ldexp(1.0, -(2 + t % 6)), ah = uniform(0.05, 0.95);
    const double alpha = x0 + h * ah;
    const JumpSequence r(testing::random_jumps(m));
    const auto v = testing::admissible(testing::wave(), alpha, r.values(), m);
    Eigen::MatrixXd A(m + 1, m + 1), G(m + 1, m + 1);
    Eigen::VectorXd b(m + 1), g(m + 1);
    for (int i = 0; i <= m; ++i) {
      const auto wt = [&](Side s) { return s == Side::minus ? r[i] : 1.0; };
      b(i) = split_integral(x0, x0 + h, alpha, [&](double x, Side s) { return wt(s) * v.eval(x, i, s); });
      g(i) = split_integral(x0, x0 + h, alpha, [&](double x, Side s) { return mono(x, alpha, i, 0, r[i], s) * v.eval(x, 0, s); });
      for (int j = 0; j <= m; ++j) {
        A(i, j) = split_integral(x0, x0 + h, alpha, [&](double x, Side s) { return wt(s) * mono(x, alpha, j, i, r[j], s); });
        G(i, j) = split_integral(x0, x0 + h, alpha,
                                 [&](double x, Side s) { return mono(x, alpha, i, 0, r[i], s) * mono(x, alpha, j, 0, r[j], s); });
      }
    }
    const Eigen::VectorXd cm = A.lu().solve(b), cl = G.lu().solve(g);
    const PiecewiseSmooth ref = v.to_reference(x0, h);
    const auto pm = moment_projection(m, ah, r, ref).value, pl = l2_projection(m, ah, r, 1.0, 1.0, ref).value;
    for (int k = 0; k <= m; ++k) {
      const double hk = std::pow(h, k);
      CHECK(std::abs(pm.coeffs()[k] - cm(k) * hk) < 1e-11 * std::max(1.0, std::abs(cm(k) * hk)));
      CHECK(std::abs(pl.coeffs()[k] - cl(k) * hk) < 1e-11 * std::max(1.0, std::abs(cl(k) * hk)));
    }
  }
}

TEST_CASE("uniform boundedness over interface positions") {
  const int m = 2;
  std::vector<double> rr{1.0, 0.2, 0.2};
  const JumpSequence r(rr);
  auto ratio = [&](double ah) {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto v = testing::admissible(Smooth::sine(1.0, 1.0 + t, 0.3 * t), ah, rr, m, 0.5 * t - 2.0);
      double n0 = 0.0, n1 = 0.0;
      const auto p = l2_projection(m, ah, r, 1.0, 1.0, v).value;
      const auto lp = lobatto_projection(m, ah, r, v).value;
      double pn = 0.0, ln = 0.0;
      const auto ql = gauss_legendre(20, 0.0, ah), qr = gauss_legendre(20, ah, 1.0);
      for (int side = 0; side < 2; ++side) {
        const auto& q = side ? qr : ql;
        const Side s = side ? Side::plus : Side::minus;
        for (int k = 0; k < 20; ++k) {
          n0 += q.weights[k] * std::pow(v.eval(q.points[k], 0, s), 2);
          n1 += q.weights[k] * std::pow(v.eval(q.points[k], 1, s), 2);
          pn += q.weights[k] * std::pow(p.eval(q.points[k], 0, s), 2);
          ln += q.weights[k] * std::pow(lp.eval(q.points[k], 0, s), 2);
        }
      }
      worst = std::max({worst, std::sqrt(pn / n0), std::sqrt(ln / (n0 + n1))});
    }
    return worst;
  };
  const double mid = ratio(0.5);
  for (double ah : {0.005, 0.05, 0.95, 0.995}) CHECK(ratio(ah) < 5.0 * mid);
}
