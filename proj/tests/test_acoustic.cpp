// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "ife1d/acoustic.hpp"
#include "ife1d/experiments.hpp"
#include "support.hpp"

using namespace ife1d;
using testing::uniform;

namespace {
MaterialParams random_material() { return {uniform(0.2, 5.0), uniform(0.2, 5.0), uniform(0.2, 5.0), uniform(0.2, 5.0)}; }
}  // namespace

TEST_CASE("unit material") {
  const auto M = build_matrices({1.0, 1.0, 1.0, 1.0});
  const Eigen::Matrix2d swap{{0.0, 1.0}, {1.0, 0.0}};
  CHECK((M.minus.A - swap).norm() == 0.0);
  CHECK((M.minus.S - Eigen::Matrix2d::Identity()).norm() == 0.0);
  CHECK((M.A_tilde - swap).norm() == 0.0);
}

TEST_CASE("matrix identities") {
  for (int t = 0; t < 200; ++t) {
    const auto mat = random_material();
    const auto M = build_matrices(mat);
    for (const auto* Z : {&M.minus, &M.plus}) {
      const double rho = Z == &M.minus ? mat.rho_minus : mat.rho_plus, c = Z == &M.minus ? mat.c_minus : mat.c_plus;
      CHECK(Z->A(0, 1) == rho * c * c);
      CHECK(Z->A(1, 0) == 1.0 / rho);
      CHECK(Z->A(0, 0) == 0.0);
      CHECK(((Z->A * Z->A) - c * c * Eigen::Matrix2d::Identity()).norm() <= 1e-14 * c * c);
      CHECK((Z->S - Z->Pinv.transpose() * Z->Pinv).norm() <= 1e-12 * Z->S.norm());
      CHECK((Z->S * Z->A - M.A_tilde).norm() <= 1e-14);
      CHECK((Z->P * Z->speeds.asDiagonal() * Z->Pinv - Z->A).norm() <= 1e-12 * Z->A.norm());
      CHECK((Z->Aplus + Z->Aminus - Z->A).norm() <= 1e-13 * Z->A.norm());
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ep(Z->S * Z->Aplus), em(Z->S * Z->Aminus), ea(Z->S * Z->Aabs);
      CHECK(ep.eigenvalues().minCoeff() >= -1e-12);
      CHECK(em.eigenvalues().maxCoeff() <= 1e-12);
      CHECK(ea.eigenvalues().minCoeff() > 0.0);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> co(Z->S * (Z->Aplus - Z->Aminus));
      CHECK(co.eigenvalues().minCoeff() == doctest::Approx(std::min(rho * c, 1.0 / (rho * c))).epsilon(1e-12));
      CHECK(coercivity_constant(rho, c) == doctest::Approx(std::min(rho * c, 1.0 / (rho * c))).epsilon(1e-12));
      const Eigen::Vector2d w(uniform(-1, 1), uniform(-1, 1));
      CHECK((Z->Aplus * w + Z->Aminus * w - Z->A * w).norm() <= 1e-13 * (1.0 + Z->A.norm()));
    }
  }
}

TEST_CASE("split definiteness") {
  double eps = HUGE_VAL;
  for (int t = 0; t < 10000; ++t) {
    const auto Z = acoustic_zone(uniform(0.2, 5.0), uniform(0.2, 5.0));
    const Eigen::Vector2d w = Eigen::Vector2d(uniform(-1, 1), uniform(-1, 1)).normalized();
    for (int s = 0; s < 2; ++s) {
      const Eigen::Matrix2d& As = s ? Z.Aplus : Z.Aminus;
      const Eigen::Matrix2d& Ao = s ? Z.Aminus : Z.Aplus;
      eps = std::min(eps, (As * w).squaredNorm() + std::abs(w.dot(Z.S * Ao * w)));
    }
  }
  CHECK(eps > 1e-4);
}

TEST_CASE("jump coefficients") {
  const auto J = jump_coefficients(5, {1.0, 1.0, 1.0, 2.0});
  const std::vector<double> rp{1.0, 1.0, 0.25, 0.25, 1.0 / 16, 1.0 / 16}, ru{1.0, 0.25, 0.25, 1.0 / 16, 1.0 / 16, 1.0 / 64};
  for (int k = 0; k <= 5; ++k) {
    CHECK(J.pressure[k] == doctest::Approx(rp[k]).epsilon(1e-15));
    CHECK(J.velocity[k] == doctest::Approx(ru[k]).epsilon(1e-15));
  }
  const auto same = jump_coefficients(4, {2.0, 2.0, 3.0, 3.0});
  for (int k = 0; k <= 4; ++k) CHECK((same.pressure[k] == 1.0 && same.velocity[k] == 1.0));
  for (int t = 0; t < 100; ++t) {
    const auto mat = random_material();
    const auto M = build_matrices(mat);
    const auto Jt = jump_coefficients(6, mat);
    CHECK(Jt.pressure[0] == 1.0);
    CHECK(Jt.velocity[0] == 1.0);
    const Eigen::Matrix2d Ainv = M.plus.A.inverse();
    Eigen::Matrix2d L = Eigen::Matrix2d::Identity(), R = Eigen::Matrix2d::Identity();
    for (int k = 1; k <= 6; ++k) {
      L = Ainv * L;
      R = R * M.minus.A;
      const Eigen::Matrix2d D = L * R;
      const double s = std::max(std::abs(D(0, 0)), std::abs(D(1, 1)));
      CHECK(std::abs(D(0, 1)) <= 1e-12 * s);
      CHECK(std::abs(D(1, 0)) <= 1e-12 * s);
      CHECK(D(0, 0) == doctest::Approx(Jt.pressure[k]).epsilon(1e-12));
      CHECK(D(1, 1) == doctest::Approx(Jt.velocity[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("kinematic jumps") {
  const auto r = kinematic_jumps(4, 1.0, 2.0);
  CHECK(r[3] == doctest::Approx(0.125));
  const auto same = kinematic_jumps(4, 1.5, 1.5);
  for (double x : same.values()) CHECK(x == 1.0);
  const auto Z = kinematic_zone(2.0);
  CHECK((Z.S * Z.A)(0, 0) == doctest::Approx(1.0));
  CHECK(Z.Aplus(0, 0) == 2.0);
  CHECK(Z.Aminus(0, 0) == 0.0);
}

TEST_CASE("exact transport solution") {
  const TransportSetup s;
  const Smooth u0 = transport_pulse();
  const auto at0 = transport_exact(s, 0.0);
  for (double x : {0.0, 0.1, 0.4, s.alpha, 2.0}) CHECK(at0(0, x) == doctest::Approx(u0(x)));
  const auto f = Smooth::pulse();
  CHECK(u0(0.3) == doctest::Approx(f(0.4)));
  CHECK(f(0.5) == doctest::Approx(0.5 * std::pow(0.75, 5)));
  CHECK(f(1.5) == 0.0);
  const auto r = kinematic_jumps(3, s.c_minus, s.c_plus);
  for (double t : {0.3, 0.7, 1.0, 1.4}) {
    const auto u = transport_exact(s, t);
    CHECK(std::abs(u.pieces[0][0](s.alpha) - u.pieces[0][1](s.alpha)) < 1e-12);
    for (double x : {0.1, 0.9}) CHECK(u(0, x) == doctest::Approx(u0(x - s.c_minus * t)));
    // one-sided finite differences of the closed form
    const double d = 1e-4;
    auto fd = [&](const Smooth& g, double x0, double dir) {
      return dir * (-g(x0 + 2 * dir * d) + 4 * g(x0 + dir * d) - 3 * g(x0)) / (2 * d);
    };
    const double left = fd(u.pieces[0][0], s.alpha, -1.0), right = fd(u.pieces[0][1], s.alpha, 1.0);
    CHECK(std::abs(right - r[1] * left) < 1e-5);
    for (int k = 1; k <= 3; ++k)
      CHECK(u.pieces[0][1](s.alpha, k) == doctest::Approx(r[k] * u.pieces[0][0](s.alpha, k)).epsilon(1e-10));
  }
}

TEST_CASE("two-interface transit period") {
  const EnergySetup s;
  CHECK(transit_period(s) == doctest::Approx(4.0 - std::numbers::pi / 6).epsilon(1e-14));
  CHECK(transit_period(s) == doctest::Approx(3.4764).epsilon(1e-4));
  const auto md = kinematic_medium(s.interfaces, s.speeds, 2);
  const DGSpace sp(InterfaceMesh(0.0, 4.0, 64, s.interfaces), md, 2);
  const int e = sp.mesh().element_of(1.2);
  CHECK(sp.zone_at(e, Side::minus) == 1);
  CHECK(1.0 / sp.zone(1).S(0, 0) == doctest::Approx(2.0));
}
