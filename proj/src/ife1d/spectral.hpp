// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>

#include "ife1d/dg.hpp"

namespace ife1d {

struct SpectralOptions {
  double rtol = 1e-6;
  int max_matvecs = 10000;
  int krylov_dim = 40;
  std::uint64_t seed = 0x5eed;
};

struct SpectralEstimate {
  double radius = 0.0;
  bool converged = false;
  int matvecs = 0;
};

using LinearMap = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

/// Largest eigenvalue modulus by restarted Arnoldi (complex pairs included).
SpectralEstimate spectral_radius(const LinearMap& apply, int n, const SpectralOptions& opt = {});

/// Spectral radius of a sparse matrix whose coupling graph between consecutive blocks of
/// block_size unknowns is reduced to block-triangular form by strongly connected components.
/// Diagonal components up to dense_limit unknowns are solved exactly; larger ones use Arnoldi.
SpectralEstimate block_spectral_radius(const Eigen::SparseMatrix<double>& L, int block_size,
                                       const SpectralOptions& opt = {}, int dense_limit = 2500);

/// 1 / rho(M^{-1} B).
double max_stable_dt(const DGOperator& op, const SpectralOptions& opt = {});
double max_stable_dt(const Eigen::MatrixXd& M, const Eigen::MatrixXd& B, const SpectralOptions& opt = {});

}  // namespace ife1d
