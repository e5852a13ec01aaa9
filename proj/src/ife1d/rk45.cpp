// SPDX-License-Identifier: Apache-2.0
#include "ife1d/rk45.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ife1d/error.hpp"

namespace ife1d {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

double scaled_norm(const Eigen::VectorXd& v, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                   const Rk45Options& o) {
  const Eigen::ArrayXd sc = o.atol + o.rtol * y0.array().abs().max(y1.array().abs());
  return std::sqrt((v.array() / sc).square().mean());
}

}  // namespace

Rk45Stats integrate_rk45(const OdeRhs& f, Eigen::VectorXd& y, double t0, double t1, const Rk45Options& opt,
                         const StepObserver& observe) {
  require(t1 > t0, ErrorCode::invalid_argument, "integrate_rk45: need t1 > t0");
  require(opt.rtol > 0.0 && opt.atol >= 0.0, ErrorCode::invalid_argument, "integrate_rk45: bad tolerances");
  const long n = y.size();
  const double span = t1 - t0, hmin = 1e-12 * span;
  const double hmax = opt.max_step > 0.0 ? opt.max_step : span;
  Rk45Stats st;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ys(n), ynew(n), err(n);
  auto eval = [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
    f(t, x, dx);
    ++st.evaluations;
  };

  double t = t0;
  eval(t, y, k1);
  if (observe) observe(t, y);

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Standard starting-step heuristic from the scaled sizes of y and f(y).
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    const double d0 = scaled_norm(y, y, zero, opt), d1 = scaled_norm(k1, y, zero, opt);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, hmax);
    ys = y + h0 * k1;
    eval(t + h0, ys, k2);
    const double d2 = scaled_norm(k2 - k1, y, zero, opt) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / std::max(d1, d2), 0.2);
    h = std::min({100.0 * h0, h1, hmax});
  }

  constexpr double beta = 0.04, safe = 0.9, facmin = 0.2, facmax = 10.0;
  const double expo = 0.2 - 0.75 * beta;
  double errold = 1e-4;
  bool last_rejected = false;

  while (t < t1) {
    if (st.accepted + st.rejected >= opt.max_steps) fail(ErrorCode::solver, "integrate_rk45: step budget exhausted");
    bool final_step = false;
    if (t + 1.01 * h >= t1) {
      h = t1 - t;
      final_step = true;
    }
    if (h < hmin && !final_step) {
      std::ostringstream os;
      os << "integrate_rk45: step size underflow at t = " << t;
      fail(ErrorCode::solver, os.str());
    }
    ys = y + h * a21 * k1;
    eval(t + c2 * h, ys, k2);
    ys = y + h * (a31 * k1 + a32 * k2);
    eval(t + c3 * h, ys, k3);
    ys = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    eval(t + c4 * h, ys, k4);
    ys = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    eval(t + c5 * h, ys, k5);
    ys = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    eval(t + h, ys, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    eval(t + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = scaled_norm(err, y, ynew, opt);
    if (!std::isfinite(en)) fail(ErrorCode::solver, "integrate_rk45: non-finite error estimate");

    double fac = std::pow(std::max(en, 1e-300), expo) / std::pow(errold, beta);
    fac = std::clamp(fac / safe, 1.0 / facmax, 1.0 / facmin);
    if (en <= 1.0) {
      errold = std::max(en, 1e-4);
      t = final_step ? t1 : t + h;
      y.swap(ynew);
      k1.swap(k7);
      ++st.accepted;
      if (observe) observe(t, y);
      double hnew = std::min(h / fac, hmax);
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
    } else {
      ++st.rejected;
      last_rejected = true;
      h = h / std::min(1.0 / facmin, std::pow(en, expo) / safe);
    }
  }
  return st;
}

}  // namespace ife1d
