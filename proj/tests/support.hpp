// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "ife1d/rife.hpp"
#include "ife1d/smooth.hpp"

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline std::vector<double> random_jumps(int m, double lo = 0.2, double hi = 5.0) {
  std::vector<double> r(m + 1);
  for (auto& x : r) x = std::exp(uniform(std::log(lo), std::log(hi)));
  return r;
}

inline std::vector<double> random_coeffs(int m) {
  std::vector<double> c(m + 1);
  for (auto& x : c) x = uniform(-1.0, 1.0);
  return c;
}

// Left piece g, right piece its order-m jump extension plus a term vanishing to order m+1.
inline ife1d::PiecewiseSmooth admissible(const ife1d::Smooth& g, double alpha, const std::vector<double>& r, int m,
                                         double bump = 0.6) {
  std::vector<double> top(m + 2, 0.0);
  top[m + 1] = bump;
  const auto right = ife1d::jump_extension(g, alpha, r, m) +
                     ife1d::Smooth::polynomial(alpha, top) * ife1d::Smooth::exponential(1.0, 0.5);
  return {alpha, g, right};
}

inline ife1d::Smooth wave() { return ife1d::Smooth::sine(1.0, 2.3, 0.4) + ife1d::Smooth::exponential(0.3, -1.1); }

inline ife1d::PiecewiseSmooth as_piecewise(const ife1d::RifeFunction& f) {
  const auto& l = f.left_coeffs();
  const auto& r = f.right_coeffs();
  return {f.alpha_hat(), ife1d::Smooth::polynomial(f.alpha_hat(), l), ife1d::Smooth::polynomial(f.alpha_hat(), r)};
}

inline double coeff_distance(const ife1d::RifeFunction& a, const ife1d::RifeFunction& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) d = std::max(d, std::abs(a.coeffs()[k] - b.coeffs()[k]));
  return d;
}

}  // namespace testing
