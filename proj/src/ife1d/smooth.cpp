// SPDX-License-Identifier: Apache-2.0
#include "ife1d/smooth.hpp"

#include <cmath>
#include <numbers>

#include "ife1d/error.hpp"

namespace ife1d {

namespace {

double falling(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double poly_derivative(const std::vector<double>& c, double t, int k) {
  double sum = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) sum = sum * t + c[j] * falling(j, k);
  return sum;
}

}  // namespace

Smooth::Smooth() : f_([](double, int) { return 0.0; }) {}

Smooth Smooth::constant(double value) {
  return Smooth([value](double, int k) { return k == 0 ? value : 0.0; });
}

Smooth Smooth::polynomial(double center, std::vector<double> coeffs) {
  return Smooth([center, c = std::move(coeffs)](double x, int k) { return poly_derivative(c, x - center, k); });
}

Smooth Smooth::sine(double amp, double freq, double phase) {
  return Smooth([=](double x, int k) {
    return amp * std::pow(freq, k) * std::sin(freq * x + phase + 0.5 * std::numbers::pi * k);
  });
}

Smooth Smooth::exponential(double amp, double rate) {
  return Smooth([=](double x, int k) { return amp * std::pow(rate, k) * std::exp(rate * x); });
}

Smooth Smooth::windowed_polynomial(std::vector<double> coeffs, double lo, double hi) {
  return Smooth([=, c = std::move(coeffs)](double x, int k) {
    if (x < lo || x > hi) return 0.0;
    return poly_derivative(c, x, k);
  });
}

Smooth Smooth::pulse() {
  std::vector<double> c(12, 0.0);
  for (int j = 0; j <= 5; ++j) c[2 * j + 1] = binom(5, j) * ((j % 2) ? -1.0 : 1.0);
  return windowed_polynomial(std::move(c), -1.0, 1.0);
}

Smooth Smooth::affine(double a, double b) const {
  return Smooth([f = f_, a, b](double x, int k) { return std::pow(a, k) * f(a * x + b, k); });
}

Smooth Smooth::scaled(double s) const {
  return Smooth([f = f_, s](double x, int k) { return s * f(x, k); });
}

Smooth Smooth::derivative(int n) const {
  return Smooth([f = f_, n](double x, int k) { return f(x, k + n); });
}

Smooth operator+(const Smooth& f, const Smooth& g) {
  return Smooth([f, g](double x, int k) { return f(x, k) + g(x, k); });
}

Smooth operator-(const Smooth& f, const Smooth& g) {
  return Smooth([f, g](double x, int k) { return f(x, k) - g(x, k); });
}

Smooth operator*(const Smooth& f, const Smooth& g) {
  return Smooth([f, g](double x, int k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += binom(k, j) * f(x, j) * g(x, k - j);
    return s;
  });
}

PiecewiseSmooth PiecewiseSmooth::to_reference(double x0, double h) const {
  require(h > 0.0, ErrorCode::invalid_argument, "to_reference: h must be positive");
  return {(alpha - x0) / h, left.affine(h, x0), right.affine(h, x0)};
}

Smooth jump_extension(const Smooth& g, double alpha, const std::vector<double>& r, int m) {
  require(static_cast<int>(r.size()) > m, ErrorCode::invalid_argument, "jump_extension: jump sequence too short");
  std::vector<double> c(m + 1);
  double fact = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) fact *= k;
    c[k] = r[k] * g(alpha, k) / fact;
  }
  return Smooth::polynomial(alpha, std::move(c));
}

}  // namespace ife1d
