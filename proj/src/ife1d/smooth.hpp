// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace ife1d {

enum class Side { minus, plus };

/// A real function together with all of its derivatives: f(x, k) = d^k f / dx^k.
class Smooth {
 public:
  using Fn = std::function<double(double, int)>;

  Smooth();
  explicit Smooth(Fn f) : f_(std::move(f)) {}

  double operator()(double x, int k = 0) const { return f_(x, k); }

  static Smooth constant(double value);
  /// sum_k c[k] (x - center)^k
  static Smooth polynomial(double center, std::vector<double> coeffs);
  /// amp * sin(freq * x + phase)
  static Smooth sine(double amp, double freq, double phase = 0.0);
  /// amp * exp(rate * x)
  static Smooth exponential(double amp, double rate);
  /// Polynomial sum_k c[k] x^k on [lo, hi], zero elsewhere.
  static Smooth windowed_polynomial(std::vector<double> coeffs, double lo, double hi);
  /// x (1 - x^2)^5 on [-1, 1], zero elsewhere.
  static Smooth pulse();

  /// f(a x + b)
  Smooth affine(double a, double b) const;
  Smooth scaled(double s) const;
  /// n-th derivative as a function.
  Smooth derivative(int n) const;

  friend Smooth operator+(const Smooth& f, const Smooth& g);
  friend Smooth operator-(const Smooth& f, const Smooth& g);
  friend Smooth operator*(const Smooth& f, const Smooth& g);

 private:
  Fn f_;
};

/// Function on a line with a single break point; x == alpha evaluates the left piece.
struct PiecewiseSmooth {
  double alpha = 0.0;
  Smooth left;
  Smooth right;

  double operator()(double x, int k = 0) const { return x <= alpha ? left(x, k) : right(x, k); }
  double eval(double x, int k, Side side) const { return side == Side::minus ? left(x, k) : right(x, k); }

  /// Pull back to the reference coordinate xi = (x - x0) / h.
  PiecewiseSmooth to_reference(double x0, double h) const;
};

/// Taylor extension across alpha: sum_{k<=m} r[k] g^(k)(alpha) (x-alpha)^k / k!.
Smooth jump_extension(const Smooth& g, double alpha, const std::vector<double>& r, int m);

}  // namespace ife1d
