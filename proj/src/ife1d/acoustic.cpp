// SPDX-License-Identifier: Apache-2.0
#include "ife1d/acoustic.hpp"

#include <algorithm>
#include <cmath>

#include "ife1d/error.hpp"

namespace ife1d {

namespace {

void check_positive(double v, const char* what) {
  require(std::isfinite(v) && v > 0.0, ErrorCode::invalid_argument, std::string(what) + " must be positive");
}

void finish(ZoneMatrices& z) {
  const Eigen::VectorXd pos = z.speeds.cwiseMax(0.0);
  const Eigen::VectorXd neg = z.speeds.cwiseMin(0.0);
  z.Aplus = z.P * pos.asDiagonal() * z.Pinv;
  z.Aminus = z.P * neg.asDiagonal() * z.Pinv;
  z.Aabs = z.P * z.speeds.cwiseAbs().asDiagonal() * z.Pinv;
}

}  // namespace

ZoneMatrices acoustic_zone(double rho, double c) {
  check_positive(rho, "density");
  check_positive(c, "sound speed");
  ZoneMatrices z;
  z.A.resize(2, 2);
  z.A << 0.0, rho * c * c, 1.0 / rho, 0.0;
  z.S = Eigen::Vector2d(1.0 / (rho * c * c), rho).asDiagonal();
  const double k = 1.0 / std::sqrt(2.0 * rho);
  z.P.resize(2, 2);
  z.P << -c * rho * k, c * rho * k, k, k;
  // Closed-form inverse: det = -2 c rho k^2 = -c.
  z.Pinv.resize(2, 2);
  z.Pinv << -1.0 / (2.0 * c * rho * k), 1.0 / (2.0 * k), 1.0 / (2.0 * c * rho * k), 1.0 / (2.0 * k);
  z.speeds = Eigen::Vector2d(-c, c);
  finish(z);
  return z;
}

ZoneMatrices kinematic_zone(double c) {
  check_positive(c, "advection speed");
  ZoneMatrices z;
  z.A = Eigen::MatrixXd::Constant(1, 1, c);
  z.S = Eigen::MatrixXd::Constant(1, 1, 1.0 / c);
  z.P = Eigen::MatrixXd::Identity(1, 1);
  z.Pinv = Eigen::MatrixXd::Identity(1, 1);
  z.speeds = Eigen::VectorXd::Constant(1, c);
  finish(z);
  return z;
}

AcousticMatrices build_matrices(const MaterialParams& p) {
  AcousticMatrices m{acoustic_zone(p.rho_minus, p.c_minus), acoustic_zone(p.rho_plus, p.c_plus), {}};
  m.A_tilde << 0.0, 1.0, 1.0, 0.0;
  return m;
}

AcousticJumps jump_coefficients(int m, const MaterialParams& p) {
  require(m >= 0, ErrorCode::invalid_argument, "degree must be nonnegative");
  build_matrices(p);  // validates the material data
  const double q = p.c_minus / p.c_plus;
  std::vector<double> rp(m + 1), ru(m + 1);
  for (int i = 0; i <= m; ++i) {
    const int k = i / 2;
    const double even = std::pow(q, 2 * k);
    if (i % 2 == 0) {
      rp[i] = ru[i] = even;
    } else {
      rp[i] = (p.rho_plus / p.rho_minus) * even;
      ru[i] = (p.rho_minus / p.rho_plus) * even * q * q;
    }
  }
  return {JumpSequence(std::move(rp)), JumpSequence(std::move(ru))};
}

JumpSequence kinematic_jumps(int m, double c_minus, double c_plus) {
  check_positive(c_minus, "advection speed");
  check_positive(c_plus, "advection speed");
  std::vector<double> r(m + 1);
  for (int k = 0; k <= m; ++k) r[k] = std::pow(c_minus / c_plus, k);
  return JumpSequence(std::move(r));
}

double coercivity_constant(double rho, double c) {
  check_positive(rho, "density");
  check_positive(c, "sound speed");
  return std::min(rho * c, 1.0 / (rho * c));
}

}  // namespace ife1d
