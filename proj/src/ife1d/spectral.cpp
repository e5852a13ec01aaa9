// SPDX-License-Identifier: Apache-2.0
#include "ife1d/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ife1d/error.hpp"

namespace ife1d {

SpectralEstimate spectral_radius(const LinearMap& apply, int n, const SpectralOptions& opt) {
  require(n > 0, ErrorCode::invalid_argument, "spectral_radius: empty operator");
  SpectralEstimate est;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v0(n);
  for (int i = 0; i < n; ++i) v0(i) = gauss(rng);
  v0.normalize();

  const int k = std::min(opt.krylov_dim, n);
  double previous = -1.0;
  int stable = 0;
  Eigen::VectorXd w(n);
  while (est.matvecs < opt.max_matvecs) {
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, k + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k + 1, k);
    V.col(0) = v0;
    int dim = k;
    bool invariant = false;
    for (int j = 0; j < k; ++j) {
      apply(V.col(j), w);
      ++est.matvecs;
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const double c = V.col(i).dot(w);
          H(i, j) += c;
          w -= c * V.col(i);
        }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) <= 1e-14 * H.col(j).head(j + 1).norm()) {
        dim = j + 1;
        invariant = true;
        break;
      }
      V.col(j + 1) = w / H(j + 1, j);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(dim, dim));
    const Eigen::VectorXcd theta = es.eigenvalues();
    std::vector<int> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(theta(a)) > std::abs(theta(b)); });
    const double radius = std::abs(theta(order[0]));
    est.radius = radius;
    if (invariant) {
      est.converged = true;
      break;
    }
    if (previous > 0.0 && std::abs(radius - previous) <= opt.rtol * radius) {
      if (++stable >= 2) {
        est.converged = true;
        break;
      }
    } else {
      stable = 0;
    }
    previous = radius;
    // Restart from the dominant Ritz vectors (real and imaginary parts).
    const Eigen::MatrixXcd Y = es.eigenvectors();
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    const int keep = std::min(dim, 4);
    for (int i = 0; i < keep; ++i) {
      const Eigen::VectorXcd y = Y.col(order[i]);
      const Eigen::VectorXcd x = V.leftCols(dim).cast<std::complex<double>>() * y;
      next += x.real() + x.imag();
    }
    if (next.norm() == 0.0) break;
    v0 = next.normalized();
  }
  return est;
}

namespace {

// Tarjan's algorithm, iterative; returns components in reverse topological order.
std::vector<std::vector<int>> strong_components(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::vector<std::pair<int, std::size_t>> call;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < adj[v].size()) {
        const int w = adj[v][next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        comps.push_back(std::move(comp));
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comps;
}

}  // namespace

SpectralEstimate block_spectral_radius(const Eigen::SparseMatrix<double>& L, int block_size,
                                       const SpectralOptions& opt, int dense_limit) {
  require(L.rows() == L.cols() && block_size > 0 && L.rows() % block_size == 0, ErrorCode::invalid_argument,
          "block_spectral_radius: bad block layout");
  const int nb = static_cast<int>(L.rows()) / block_size;
  std::vector<std::vector<int>> adj(nb);
  for (int k = 0; k < L.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(L, k); it; ++it)
      if (it.value() != 0.0) adj[it.row() / block_size].push_back(static_cast<int>(it.col()) / block_size);
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  SpectralEstimate est;
  est.converged = true;
  for (const auto& comp : strong_components(adj)) {
    std::vector<int> idx;
    for (int b : comp)
      for (int i = 0; i < block_size; ++i) idx.push_back(b * block_size + i);
    std::sort(idx.begin(), idx.end());
    const int d = static_cast<int>(idx.size());
    std::vector<int> local(L.rows(), -1);
    for (int i = 0; i < d; ++i) local[idx[i]] = i;
    if (d <= dense_limit) {
      Eigen::MatrixXd D = Eigen::MatrixXd::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (Eigen::SparseMatrix<double>::InnerIterator it(L, idx[i]); it; ++it)
          if (local[it.row()] >= 0) D(local[it.row()], i) = it.value();
      Eigen::EigenSolver<Eigen::MatrixXd> es(D, false);
      require(es.info() == Eigen::Success, ErrorCode::solver, "block_spectral_radius: eigenvalue solver failed");
      est.radius = std::max(est.radius, es.eigenvalues().cwiseAbs().maxCoeff());
    } else {
      Eigen::SparseMatrix<double> sub(d, d);
      std::vector<Eigen::Triplet<double>> t;
      for (int i = 0; i < d; ++i)
        for (Eigen::SparseMatrix<double>::InnerIterator it(L, idx[i]); it; ++it)
          if (local[it.row()] >= 0) t.emplace_back(local[it.row()], i, it.value());
      sub.setFromTriplets(t.begin(), t.end());
      const auto part = spectral_radius([&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = sub * x; }, d, opt);
      est.radius = std::max(est.radius, part.radius);
      est.converged = est.converged && part.converged;
      est.matvecs += part.matvecs;
    }
  }
  return est;
}

double max_stable_dt(const DGOperator& op, const SpectralOptions& opt) {
  const auto est = block_spectral_radius(op.L, op.block_size, opt);
  require(est.radius > 0.0, ErrorCode::solver, "max_stable_dt: zero spectral radius");
  return 1.0 / est.radius;
}

double max_stable_dt(const Eigen::MatrixXd& M, const Eigen::MatrixXd& B, const SpectralOptions& opt) {
  require(M.rows() == M.cols() && B.rows() == M.rows() && B.cols() == M.cols(), ErrorCode::invalid_argument,
          "max_stable_dt: shape mismatch");
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  const auto est = spectral_radius([&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = lu.solve(B * x); },
                                   static_cast<int>(M.rows()), opt);
  require(est.radius > 0.0, ErrorCode::solver, "max_stable_dt: zero spectral radius");
  return 1.0 / est.radius;
}

}  // namespace ife1d
