// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ife1d/mesh.hpp"
#include "ife1d/rife.hpp"
#include "ife1d/smooth.hpp"

namespace ife1d {

/// Conforming piecewise function: local basis per element, local-to-global map with scale factors.
struct FemFunction {
  InterfaceMesh mesh;
  std::vector<std::vector<RifeFunction>> basis;  // [element][local]
  std::vector<std::vector<int>> dofs;            // global index or -1 for constrained
  std::vector<std::vector<double>> scale;        // multiplies the global coefficient
  Eigen::VectorXd coeffs;

  /// k-th physical derivative at x (left limit at interfaces).
  double operator()(double x, int k = 0) const;
};

/// ||u - v||_i (full Sobolev norm up to order i) over the whole mesh.
double fem_error(const FemFunction& v, const PiecewiseSmooth& u, int i);

struct TwoPhaseProblem {
  double a, b, alpha, beta_minus, beta_plus;
  PiecewiseSmooth f;
};

struct FemResult {
  FemFunction u;
  double residual;  // relative max-norm residual of the assembled system
};

/// r = (1, q, q, ...) with q = beta_minus / beta_plus, length m + 1.
JumpSequence elliptic_jumps(int m, double beta_minus, double beta_plus);

/// -(beta u')' = f, u(a) = u(b) = 0; continuous degree-m elements with IFE shape functions on the interface element.
FemResult solve_elliptic(const TwoPhaseProblem& p, int n, int m);

/// (beta u'')'' = f, clamped ends; C^1 cubic Hermite elements with IFE shape functions on the interface element.
FemResult solve_beam(const TwoPhaseProblem& p, int n);

/// Global C^1 Hermite interpolant of u with jumps (1, 1, rho, rho) on the interface element.
FemFunction hermite_global_interpolant(const InterfaceMesh& mesh, double rho, const PiecewiseSmooth& u);

struct Manufactured {
  PiecewiseSmooth u;
  PiecewiseSmooth f;
};

/// Interface solution of the elliptic problem satisfying the degree-m jump conditions and the boundary data.
Manufactured manufactured_elliptic(double a, double b, double alpha, double beta_minus, double beta_plus, int m);

/// Interface solution of the clamped beam problem with jumps (1, 1, rho, rho).
Manufactured manufactured_beam(double a, double b, double alpha, double beta_minus, double beta_plus);

}  // namespace ife1d
