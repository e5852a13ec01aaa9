// SPDX-License-Identifier: Apache-2.0
#include "ife1d/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ife1d/error.hpp"

namespace ife1d {

void legendre(int n, double t, double& p, double& dp) {
  double p0 = 1.0, p1 = t;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // Endpoint-safe derivative: P'_n(+-1) = (+-1)^(n-1) n(n+1)/2.
  if (std::abs(std::abs(t) - 1.0) < 1e-14) {
    dp = 0.5 * n * (n + 1) * ((t > 0 || n % 2 == 1) ? 1.0 : -1.0);
  } else {
    dp = n * (t * p1 - p0) / (t * t - 1.0);
  }
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  require(n >= 1, ErrorCode::invalid_argument, "gauss_legendre: n must be positive");
  QuadratureRule q;
  q.points.resize(n);
  q.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0, dp = 0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, t, p, dp);
      const double dt = p / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    legendre(n, t, p, dp);
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    q.points[i] = mid - half * t;
    q.points[n - 1 - i] = mid + half * t;
    q.weights[i] = q.weights[n - 1 - i] = half * w;
  }
  return q;
}

std::vector<double> gauss_lobatto_nodes(int n, double a, double b) {
  require(n >= 2, ErrorCode::invalid_argument, "gauss_lobatto_nodes: n must be >= 2");
  // Interior nodes are roots of P'_{n-1}; Newton on q = P'_{n-1}, q' from the Legendre ODE.
  std::vector<double> t(n);
  t[0] = -1.0;
  t[n - 1] = 1.0;
  const int N = n - 1;
  for (int i = 1; i < n - 1; ++i) {
    double x = -std::cos(std::numbers::pi * i / N);
    for (int it = 0; it < 100; ++it) {
      double p = 0, dp = 0;
      legendre(N, x, p, dp);
      const double d2p = (2.0 * x * dp - N * (N + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    t[i] = x;
  }
  for (auto& x : t) x = a + 0.5 * (b - a) * (x + 1.0);
  return t;
}

double shifted_legendre(int n, double x, int k) {
  // k-th derivative through the series P_n(2x-1) = sum_j c_j x^j.
  // Coefficients: c_j = (-1)^(n+j) C(n,j) C(n+j,j).
  if (k > n) return 0.0;
  if (k <= 1) {
    double p = 0, dp = 0;
    legendre(n, 2.0 * x - 1.0, p, dp);
    return k == 0 ? p : 2.0 * dp;
  }
  double sum = 0.0;
  for (int j = n; j >= k; --j) {
    double c = ((n + j) % 2 == 0) ? 1.0 : -1.0;
    for (int i = 1; i <= j; ++i) c *= static_cast<double>(n - j + i) / i * static_cast<double>(n + i) / i;
    double ff = 1.0;
    for (int i = 0; i < k; ++i) ff *= (j - i);
    sum += c * ff * std::pow(x, j - k);
  }
  return sum;
}

}  // namespace ife1d
