// SPDX-License-Identifier: Apache-2.0
#include "ife1d/rife.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ife1d/error.hpp"
#include "ife1d/linalg.hpp"
#include "ife1d/quadrature.hpp"

namespace ife1d {

namespace {

double falling(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

double eval_shifted(const std::vector<double>& c, double t, int k) {
  double sum = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) sum = sum * t + c[j] * falling(j, k);
  return sum;
}

void check_jumps(int m, const JumpSequence& r) {
  require(m >= 0, ErrorCode::invalid_argument, "degree must be nonnegative");
  require(static_cast<int>(r.size()) >= m + 1, ErrorCode::invalid_argument,
          "jump sequence shorter than degree + 1");
}

}  // namespace

JumpSequence::JumpSequence(std::vector<double> r) : r_(std::move(r)) {
  for (double v : r_)
    require(std::isfinite(v) && v > 0.0, ErrorCode::invalid_argument, "jump coefficients must be finite and positive");
}

JumpSequence JumpSequence::ones(std::size_t n) { return JumpSequence(std::vector<double>(n, 1.0)); }

double JumpSequence::operator[](std::size_t k) const {
  require(k < r_.size(), ErrorCode::index, "jump index out of range");
  return r_[k];
}

JumpSequence JumpSequence::shift(std::size_t s) const {
  if (s >= r_.size()) return JumpSequence();
  return JumpSequence(std::vector<double>(r_.begin() + static_cast<std::ptrdiff_t>(s), r_.end()));
}

JumpSequence JumpSequence::reciprocal() const {
  std::vector<double> out(r_.size());
  std::transform(r_.begin(), r_.end(), out.begin(), [](double v) { return 1.0 / v; });
  return JumpSequence(std::move(out));
}

double checked_alpha_hat(double alpha_hat) {
  require(alpha_hat > 0.0 && alpha_hat < 1.0, ErrorCode::invalid_argument, "reference interface must lie in (0, 1)");
  return alpha_hat;
}

RifeFunction::RifeFunction(int degree, double alpha_hat, JumpSequence r, std::vector<double> coeffs)
    : m_(degree), alpha_hat_(checked_alpha_hat(alpha_hat)), r_(std::move(r)), left_(std::move(coeffs)) {
  check_jumps(m_, r_);
  require(static_cast<int>(left_.size()) == m_ + 1, ErrorCode::invalid_argument, "coefficient count must be degree + 1");
  right_ = extend(m_, r_, Side::minus, left_);
}

RifeFunction RifeFunction::canonical(int degree, double alpha_hat, const JumpSequence& r, int k) {
  require(k >= 0 && k <= degree, ErrorCode::index, "canonical basis index out of range");
  std::vector<double> c(degree + 1, 0.0);
  c[k] = 1.0;
  return RifeFunction(degree, alpha_hat, r, std::move(c));
}

RifeFunction RifeFunction::zero(int degree, double alpha_hat, const JumpSequence& r) {
  return RifeFunction(degree, alpha_hat, r, std::vector<double>(degree + 1, 0.0));
}

double RifeFunction::eval(double x, int k, Side side) const {
  return eval_shifted(side == Side::minus ? left_ : right_, x - alpha_hat_, k);
}

double RifeFunction::operator()(double x, int k) const {
  require(x >= -1e-12 && x <= 1.0 + 1e-12, ErrorCode::domain, "evaluation point outside [0, 1]");
  return eval(x, k, x <= alpha_hat_ ? Side::minus : Side::plus);
}

RifeFunction RifeFunction::derivative() const {
  if (m_ == 0) return zero(0, alpha_hat_, JumpSequence::ones(1));
  std::vector<double> c(m_);
  for (int k = 1; k <= m_; ++k) c[k - 1] = k * left_[k];
  return RifeFunction(m_ - 1, alpha_hat_, r_.shift(1), std::move(c));
}

RifeFunction RifeFunction::operator+(const RifeFunction& o) const {
  require(o.m_ == m_ && o.alpha_hat_ == alpha_hat_ && o.r_.values() == r_.values(), ErrorCode::invalid_argument,
          "adding functions from different spaces");
  std::vector<double> c(left_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.left_[i];
  return RifeFunction(m_, alpha_hat_, r_, std::move(c));
}

RifeFunction RifeFunction::operator-(const RifeFunction& o) const { return *this + o * -1.0; }

RifeFunction RifeFunction::operator*(double s) const {
  std::vector<double> c(left_);
  for (auto& v : c) v *= s;
  return RifeFunction(m_, alpha_hat_, r_, std::move(c));
}

std::vector<double> extend(int degree, const JumpSequence& r, Side from, const std::vector<double>& coeffs) {
  check_jumps(degree, r);
  require(static_cast<int>(coeffs.size()) <= degree + 1, ErrorCode::invalid_argument, "extend: degree too high");
  std::vector<double> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = from == Side::minus ? r[k] * coeffs[k] : coeffs[k] / r[k];
  return out;
}

std::vector<double> recenter(const std::vector<double>& c, double from, double to) {
  // Repeated synthetic division by (x - to).
  std::vector<double> a(c);
  const double s = to - from;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) a[j] += s * a[j + 1];
  return a;
}

double integrate_split(double alpha_hat, int points, const std::function<double(double, Side)>& f) {
  double sum = 0.0;
  const auto left = gauss_legendre(points, 0.0, alpha_hat);
  const auto right = gauss_legendre(points, alpha_hat, 1.0);
  for (int q = 0; q < points; ++q) {
    sum += left.weights[q] * f(left.points[q], Side::minus);
    sum += right.weights[q] * f(right.points[q], Side::plus);
  }
  return sum;
}

double inner(const RifeFunction& f, const RifeFunction& g, double w_minus, double w_plus) {
  require(f.alpha_hat() == g.alpha_hat(), ErrorCode::invalid_argument, "inner: interface mismatch");
  const int pts = default_points(std::max(f.degree(), g.degree()));
  return integrate_split(f.alpha_hat(), pts, [&](double x, Side s) {
    return (s == Side::minus ? w_minus : w_plus) * f.eval(x, 0, s) * g.eval(x, 0, s);
  });
}

double seminorm(const RifeFunction& f, int i) {
  require(i >= 0, ErrorCode::invalid_argument, "seminorm order must be nonnegative");
  if (i > f.degree()) return 0.0;
  const int pts = default_points(f.degree());
  const double s = integrate_split(f.alpha_hat(), pts, [&](double x, Side side) {
    const double v = f.eval(x, i, side);
    return v * v;
  });
  return std::sqrt(s);
}

double l2_norm(const RifeFunction& f) { return seminorm(f, 0); }

std::vector<RifeFunction> lagrange_basis(int degree, double alpha_hat, const JumpSequence& r,
                                         const std::vector<double>& nodes) {
  check_jumps(degree, r);
  require(static_cast<int>(nodes.size()) == degree + 1, ErrorCode::invalid_argument,
          "lagrange_basis: need degree + 1 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    require(nodes[i] >= 0.0 && nodes[i] <= 1.0, ErrorCode::domain, "lagrange_basis: node outside [0, 1]");
    for (std::size_t j = 0; j < i; ++j)
      require(std::abs(nodes[i] - nodes[j]) > 1e-14, ErrorCode::invalid_argument, "lagrange_basis: duplicate nodes");
  }
  const int n = degree + 1;
  Eigen::MatrixXd V(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) V(i, j) = RifeFunction::canonical(degree, alpha_hat, r, j)(nodes[i]);
  const auto sol = solve_dense(V, Eigen::MatrixXd::Identity(n, n), "lagrange_basis: degenerate nodes");
  std::vector<RifeFunction> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<double> c(n);
    for (int j = 0; j < n; ++j) c[j] = sol.x(j, i);
    basis.emplace_back(degree, alpha_hat, r, std::move(c));
  }
  return basis;
}

RifeFunction orthogonal_function(int degree, double alpha_hat, double w_minus, double w_plus, const JumpSequence& r) {
  require(degree >= 1, ErrorCode::invalid_argument, "orthogonal_function: degree must be at least 1");
  require(w_minus > 0.0 && w_plus > 0.0, ErrorCode::invalid_argument, "weights must be positive");
  std::vector<RifeFunction> e;
  for (int k = 0; k <= degree; ++k) {
    RifeFunction v = RifeFunction::canonical(degree, alpha_hat, r, k);
    for (const auto& q : e) v = v - q * inner(v, q, w_minus, w_plus);
    v = v * (1.0 / std::sqrt(inner(v, v, w_minus, w_plus)));
    e.push_back(v);
  }
  RifeFunction o = e.back();
  double scale = 1.0 / l2_norm(o);
  if (o.coeffs().back() < 0) scale = -scale;
  return o * scale;
}

double boundary_ratio_J(int degree, double alpha_hat, double w_minus, double w_plus, const JumpSequence& r) {
  const RifeFunction o = orthogonal_function(degree, alpha_hat, w_minus, w_plus, r);
  const double n2 = inner(o, o);
  return (o(0.0) * o(0.0) + o(1.0) * o(1.0)) / n2;
}

double inverse_constant(const RifeFunction& f, int i) {
  const double n0 = l2_norm(f);
  require(n0 > 0.0, ErrorCode::invalid_argument, "inverse_constant: zero function");
  return seminorm(f, i) / n0;
}

double inverse_constant_sup(int degree, double alpha_hat, const JumpSequence& r, int i) {
  if (i > degree) return 0.0;
  const int n = degree + 1;
  std::vector<RifeFunction> basis, dbasis;
  for (int k = 0; k < n; ++k) basis.push_back(RifeFunction::canonical(degree, alpha_hat, r, k));
  Eigen::MatrixXd G(n, n), K(n, n);
  const int pts = default_points(degree);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      G(a, b) = inner(basis[a], basis[b]);
      K(a, b) = integrate_split(alpha_hat, pts, [&](double x, Side s) {
        return basis[a].eval(x, i, s) * basis[b].eval(x, i, s);
      });
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, G);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

int count_roots(const RifeFunction& f, int grid) {
  std::vector<double> v(grid + 1);
  double scale = 0.0;
  for (int i = 0; i <= grid; ++i) {
    v[i] = f(static_cast<double>(i) / grid);
    scale = std::max(scale, std::abs(v[i]));
  }
  if (scale == 0.0) return grid + 1;
  const double tiny = 1e-9 * scale;
  int roots = 0;
  int last_sign = 0;
  int zero_start = -1;
  for (int i = 0; i <= grid; ++i) {
    const int s = v[i] > tiny ? 1 : (v[i] < -tiny ? -1 : 0);
    if (s == 0) {
      if (zero_start < 0) zero_start = i;
      continue;
    }
    if (zero_start >= 0) {
      // A run of near-zeros: boundary contact is one root, an interior touch without sign change is two.
      roots += (zero_start == 0) ? 1 : ((s == last_sign) ? 2 : 1);
      zero_start = -1;
    } else if (last_sign != 0 && s != last_sign) {
      ++roots;
    }
    last_sign = s;
  }
  if (zero_start >= 0) roots += 1;
  return roots;
}

}  // namespace ife1d
