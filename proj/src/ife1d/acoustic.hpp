// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "ife1d/rife.hpp"

namespace ife1d {

/// Coefficient matrices of a first-order hyperbolic system in one homogeneous zone.
/// A = P diag(speeds) P^{-1}, S symmetric positive definite and diagonal, S A symmetric.
struct ZoneMatrices {
  Eigen::MatrixXd A, S, P, Pinv, Aplus, Aminus, Aabs;
  Eigen::VectorXd speeds;
  int components() const { return static_cast<int>(A.rows()); }
};

/// Acoustic zone: state (p, u), A = [[0, rho c^2], [1/rho, 0]], S = diag(1/(rho c^2), rho).
ZoneMatrices acoustic_zone(double rho, double c);

/// Scalar advection u_t + c u_x = 0 with c > 0 and energy weight S = 1/c.
ZoneMatrices kinematic_zone(double c);

struct MaterialParams {
  double rho_minus, rho_plus, c_minus, c_plus;
};

struct AcousticMatrices {
  ZoneMatrices minus, plus;
  Eigen::Matrix2d A_tilde;  // S A, identical on both sides
};

AcousticMatrices build_matrices(const MaterialParams& p);

struct AcousticJumps {
  JumpSequence pressure, velocity;
};

/// Jump sequences of length m + 1 for pressure and velocity across the interface.
AcousticJumps jump_coefficients(int m, const MaterialParams& p);

/// r_k = (c_minus / c_plus)^k for k = 0..m.
JumpSequence kinematic_jumps(int m, double c_minus, double c_plus);

/// Smallest eigenvalue of S (A^+ - A^-) for one acoustic zone.
double coercivity_constant(double rho, double c);

}  // namespace ife1d
