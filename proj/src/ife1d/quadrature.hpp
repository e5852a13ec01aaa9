// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace ife1d {

struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = 0.0, double b = 1.0);

/// n-point Gauss-Lobatto-Legendre nodes on [a, b], endpoints included.
std::vector<double> gauss_lobatto_nodes(int n, double a = 0.0, double b = 1.0);

/// Points per subinterval for products of two degree-m functions.
inline int default_points(int m) { return (2 * m + 2 + 1) / 2 + 1; }

/// Legendre polynomial P_n and its derivative at t in [-1, 1].
void legendre(int n, double t, double& p, double& dp);

/// Shifted Legendre P_n(2x - 1) on [0, 1]; returns the k-th x-derivative.
double shifted_legendre(int n, double x, int k = 0);

}  // namespace ife1d
