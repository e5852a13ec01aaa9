// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ife1d/smooth.hpp"

namespace ife1d {

/// Nonzero jump coefficients r_0, r_1, ... relating right to left derivatives at the interface.
class JumpSequence {
 public:
  JumpSequence() = default;
  explicit JumpSequence(std::vector<double> r);
  static JumpSequence ones(std::size_t n);

  double operator[](std::size_t k) const;
  std::size_t size() const { return r_.size(); }
  const std::vector<double>& values() const { return r_; }

  /// Drop the first s entries.
  JumpSequence shift(std::size_t s = 1) const;
  JumpSequence reciprocal() const;

 private:
  std::vector<double> r_;
};

/// Validates 0 < alpha_hat < 1.
double checked_alpha_hat(double alpha_hat);

/// Piecewise polynomial on [0, 1] in the shifted basis (x - alpha_hat)^k on each side.
/// Right coefficients are always r_k times the left ones.
class RifeFunction {
 public:
  /// Coefficients of the canonical basis, which are also the left-piece coefficients.
  RifeFunction(int degree, double alpha_hat, JumpSequence r, std::vector<double> coeffs);

  static RifeFunction canonical(int degree, double alpha_hat, const JumpSequence& r, int k);
  static RifeFunction zero(int degree, double alpha_hat, const JumpSequence& r);

  int degree() const { return m_; }
  double alpha_hat() const { return alpha_hat_; }
  const JumpSequence& jumps() const { return r_; }
  const std::vector<double>& coeffs() const { return left_; }
  const std::vector<double>& left_coeffs() const { return left_; }
  const std::vector<double>& right_coeffs() const { return right_; }

  /// k-th derivative; x == alpha_hat gives the left limit.
  double operator()(double x, int k = 0) const;
  double eval(double x, int k, Side side) const;

  /// Degree m-1 with jumps shifted by one; degree 0 maps to the zero constant with unit jumps.
  RifeFunction derivative() const;

  RifeFunction operator+(const RifeFunction& o) const;
  RifeFunction operator-(const RifeFunction& o) const;
  RifeFunction operator*(double s) const;

 private:
  int m_;
  double alpha_hat_;
  JumpSequence r_;
  std::vector<double> left_, right_;
};

/// Extend a polynomial given on one side (coefficients in powers of x - alpha_hat) to the other side.
std::vector<double> extend(int degree, const JumpSequence& r, Side from, const std::vector<double>& coeffs);

/// Re-expand sum c_k (x - from)^k as sum d_k (x - to)^k.
std::vector<double> recenter(const std::vector<double>& c, double from, double to);

/// Integral over [0, 1] split at alpha_hat; f receives the side of the piece being integrated.
double integrate_split(double alpha_hat, int points, const std::function<double(double, Side)>& f);

/// (f, g) with piecewise constant weight (w_minus, w_plus).
double inner(const RifeFunction& f, const RifeFunction& g, double w_minus = 1.0, double w_plus = 1.0);

/// |f|_i over [0, 1], computed piecewise.
double seminorm(const RifeFunction& f, int i);
double l2_norm(const RifeFunction& f);

/// Lagrange basis of V^m for m+1 distinct nodes in [0, 1].
std::vector<RifeFunction> lagrange_basis(int degree, double alpha_hat, const JumpSequence& r,
                                         const std::vector<double>& nodes);

/// Unit-norm element of V^m orthogonal (weighted) to V^{m-1}; positive leading coefficient.
RifeFunction orthogonal_function(int degree, double alpha_hat, double w_minus, double w_plus, const JumpSequence& r);

/// (O(0)^2 + O(1)^2) / ||O||^2 for the orthogonal function O.
double boundary_ratio_J(int degree, double alpha_hat, double w_minus, double w_plus, const JumpSequence& r);

/// |f|_i / ||f||_0.
double inverse_constant(const RifeFunction& f, int i);

/// Largest |f|_i / ||f||_0 over all of V^m (generalized eigenvalue).
double inverse_constant_sup(int degree, double alpha_hat, const JumpSequence& r, int i);

/// Sign changes on a uniform grid plus detected tangential (double) roots.
int count_roots(const RifeFunction& f, int grid = 10000);

}  // namespace ife1d
