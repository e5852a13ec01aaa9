// SPDX-License-Identifier: Apache-2.0
#include "ife1d/linalg.hpp"

#include <cmath>
#include <limits>

#include "ife1d/error.hpp"

namespace ife1d {

DenseSolution solve_dense(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const std::string& context) {
  require(A.rows() == A.cols() && A.rows() == B.rows(), ErrorCode::invalid_argument, context + ": shape mismatch");
  if (A.rows() == 0) return {Eigen::MatrixXd(0, B.cols()), 1.0};
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rc = lu.rcond();
  if (!(rc > 1e-15)) fail(ErrorCode::singular, context + ": singular system");
  return {lu.solve(B), 1.0 / rc};
}

}  // namespace ife1d
