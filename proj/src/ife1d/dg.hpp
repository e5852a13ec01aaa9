// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "ife1d/acoustic.hpp"
#include "ife1d/mesh.hpp"
#include "ife1d/rife.hpp"
#include "ife1d/smooth.hpp"

namespace ife1d {

/// Piecewise-constant coefficients: zone z lies between interfaces z-1 and z.
struct Medium {
  std::vector<double> interfaces;
  std::vector<ZoneMatrices> zones;
  std::vector<std::vector<JumpSequence>> jumps;  // [interface][component]
  int components() const { return zones.front().components(); }
};

/// Scalar advection; speeds per zone, jumps r_k = (c_left / c_right)^k.
Medium kinematic_medium(std::vector<double> interfaces, const std::vector<double>& speeds, int m);
/// Acoustics; density and sound speed per zone.
Medium acoustic_medium(std::vector<double> interfaces, const std::vector<double>& rho, const std::vector<double>& c,
                       int m);

/// Function given zone by zone and component by component: pieces[q][z].
struct ZonedField {
  std::vector<double> breaks;
  std::vector<std::vector<Smooth>> pieces;

  int zone_of(double x) const;
  double operator()(int q, double x, int k = 0) const { return pieces[q][zone_of(x)](x, k); }
};

enum class Boundary { inflow_zero, inflow_data, periodic };

/// Broken space: Legendre modes on regular elements, canonical IFE modes on interface elements.
class DGSpace {
 public:
  DGSpace(InterfaceMesh mesh, Medium medium, int m);

  const InterfaceMesh& mesh() const { return mesh_; }
  const Medium& medium() const { return medium_; }
  int degree() const { return m_; }
  int components() const { return nc_; }
  int element_size() const { return nc_ * (m_ + 1); }
  int size() const { return mesh_.num_elements() * element_size(); }
  int dof(int e, int q, int j) const { return e * element_size() + q * (m_ + 1) + j; }

  bool is_interface(int e) const { return mesh_.interface_in(e) >= 0; }
  double alpha_hat(int e) const;
  int zone_at(int e, Side side) const;
  const ZoneMatrices& zone(int z) const { return medium_.zones[z]; }

  /// k-th reference derivative of mode j of component q on element e.
  double basis(int e, int q, int j, double xi, int k, Side side) const;

  struct Piece {
    double a, b;
    Side side;
    int zone;
  };
  std::vector<Piece> pieces(int e) const;

  double evaluate(const Eigen::VectorXd& U, int q, double x) const;
  /// Restriction of a zoned field to element e in reference coordinates.
  PiecewiseSmooth reference_field(const ZonedField& u, int q, int e) const;

 private:
  InterfaceMesh mesh_;
  Medium medium_;
  int m_, nc_;
  std::vector<std::vector<RifeFunction>> iface_basis_;  // [interface][q * (m+1) + j]
};

struct DGOperator {
  Eigen::SparseMatrix<double> M, B, L;  // M U' = B U (+ inflow), L = M^{-1} B
  Eigen::SparseMatrix<double> Minv;
  Eigen::MatrixXd inflow_left, inflow_right;  // columns map boundary data to right-hand sides
  Boundary boundary;
  int block_size;  // unknowns per element
};

DGOperator assemble(const DGSpace& space, Boundary bc);

/// Elementwise unweighted L2 projection.
Eigen::VectorXd l2_project(const DGSpace& space, const ZonedField& u);

/// Elementwise Radau projection; immersed Radau on interface elements.
Eigen::VectorXd global_radau(const DGSpace& space, const ZonedField& u);

/// B(u, phi_b) for every basis function, u a field with a single trace at every node.
Eigen::VectorXd apply_B(const DGSpace& space, const ZonedField& u, Boundary bc);

/// -1/2 sum over nodes of [[U]]^T S |A| [[U]].
double dissipation(const DGSpace& space, const Eigen::VectorXd& U, Boundary bc);

double energy(const DGOperator& op, const Eigen::VectorXd& U);

/// ||u_h - u||_{L2} summed over components.
double l2_error(const DGSpace& space, const Eigen::VectorXd& U, const ZonedField& u);

}  // namespace ife1d
