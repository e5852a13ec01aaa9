// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>

namespace ife1d {

struct DenseSolution {
  Eigen::MatrixXd x;
  double condition;  // reciprocal of the LU condition estimate
};

/// LU solve; throws singular when the reciprocal condition estimate falls below 1e-15.
DenseSolution solve_dense(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const std::string& context);

}  // namespace ife1d
