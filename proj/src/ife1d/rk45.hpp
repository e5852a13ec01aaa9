// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

namespace ife1d {

struct Rk45Options {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 selects automatically
  double max_step = 0.0;      // 0 means unbounded
  long max_steps = 50'000'000;
};

struct Rk45Stats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;
using StepObserver = std::function<void(double t, const Eigen::VectorXd& y)>;

/// Dormand-Prince 5(4) with PI step-size control, integrating y from t0 to t1 in place.
/// The observer sees the initial state and every accepted step.
/// Throws solver if the step falls below 1e-12 |t1 - t0| or the step budget runs out.
Rk45Stats integrate_rk45(const OdeRhs& f, Eigen::VectorXd& y, double t0, double t1, const Rk45Options& opt,
                         const StepObserver& observe = nullptr);

}  // namespace ife1d
