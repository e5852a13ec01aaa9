// SPDX-License-Identifier: Apache-2.0
#include "ife1d/dg.hpp"

#include <algorithm>
#include <cmath>

#include "ife1d/error.hpp"
#include "ife1d/projections.hpp"
#include "ife1d/quadrature.hpp"

namespace ife1d {

Medium kinematic_medium(std::vector<double> interfaces, const std::vector<double>& speeds, int m) {
  require(speeds.size() == interfaces.size() + 1, ErrorCode::invalid_argument, "need one speed per zone");
  Medium md;
  md.interfaces = std::move(interfaces);
  for (double c : speeds) md.zones.push_back(kinematic_zone(c));
  for (std::size_t i = 0; i + 1 < speeds.size(); ++i) md.jumps.push_back({kinematic_jumps(m, speeds[i], speeds[i + 1])});
  return md;
}

Medium acoustic_medium(std::vector<double> interfaces, const std::vector<double>& rho, const std::vector<double>& c,
                       int m) {
  require(rho.size() == interfaces.size() + 1 && c.size() == rho.size(), ErrorCode::invalid_argument,
          "need one material per zone");
  Medium md;
  md.interfaces = std::move(interfaces);
  for (std::size_t z = 0; z < rho.size(); ++z) md.zones.push_back(acoustic_zone(rho[z], c[z]));
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
    const auto j = jump_coefficients(m, {rho[i], rho[i + 1], c[i], c[i + 1]});
    md.jumps.push_back({j.pressure, j.velocity});
  }
  return md;
}

int ZonedField::zone_of(double x) const {
  return static_cast<int>(std::lower_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
}

DGSpace::DGSpace(InterfaceMesh mesh, Medium medium, int m)
    : mesh_(std::move(mesh)), medium_(std::move(medium)), m_(m), nc_(medium_.components()) {
  require(m >= 0, ErrorCode::invalid_argument, "DG degree must be nonnegative");
  const auto& ifs = mesh_.interfaces();
  require(ifs.size() == medium_.interfaces.size() && medium_.zones.size() == ifs.size() + 1 &&
              medium_.jumps.size() == ifs.size(),
          ErrorCode::invalid_argument, "medium does not match mesh interfaces");
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    require(std::abs(ifs[i].alpha - medium_.interfaces[i]) <= 1e-14 * (mesh_.b() - mesh_.a()),
            ErrorCode::invalid_argument, "medium interface differs from mesh interface");
    std::vector<RifeFunction> b;
    for (int q = 0; q < nc_; ++q)
      for (int j = 0; j <= m_; ++j) b.push_back(RifeFunction::canonical(m_, ifs[i].alpha_hat, medium_.jumps[i][q], j));
    iface_basis_.push_back(std::move(b));
  }
}

double DGSpace::alpha_hat(int e) const {
  const int i = mesh_.interface_in(e);
  return i >= 0 ? mesh_.interfaces()[i].alpha_hat : 1.0;
}

int DGSpace::zone_at(int e, Side side) const {
  return mesh_.zone_left(e) + ((side == Side::plus && is_interface(e)) ? 1 : 0);
}

double DGSpace::basis(int e, int q, int j, double xi, int k, Side side) const {
  const int i = mesh_.interface_in(e);
  if (i < 0) return shifted_legendre(j, xi, k);
  return iface_basis_[i][q * (m_ + 1) + j].eval(xi, k, side);
}

std::vector<DGSpace::Piece> DGSpace::pieces(int e) const {
  if (!is_interface(e)) return {{0.0, 1.0, Side::minus, zone_at(e, Side::minus)}};
  const double ah = alpha_hat(e);
  return {{0.0, ah, Side::minus, zone_at(e, Side::minus)}, {ah, 1.0, Side::plus, zone_at(e, Side::plus)}};
}

double DGSpace::evaluate(const Eigen::VectorXd& U, int q, double x) const {
  const int e = mesh_.element_of(x);
  const double xi = (x - mesh_.left(e)) / mesh_.h();
  const Side side = xi <= alpha_hat(e) ? Side::minus : Side::plus;
  double s = 0.0;
  for (int j = 0; j <= m_; ++j) s += U(dof(e, q, j)) * basis(e, q, j, xi, 0, side);
  return s;
}

PiecewiseSmooth DGSpace::reference_field(const ZonedField& u, int q, int e) const {
  const double x0 = mesh_.left(e), h = mesh_.h();
  return {alpha_hat(e), u.pieces[q][zone_at(e, Side::minus)].affine(h, x0),
          u.pieces[q][zone_at(e, Side::plus)].affine(h, x0)};
}

namespace {

// nc x element_size matrix of basis values at xi = 0 (right limit) or xi = 1 (left limit).
Eigen::MatrixXd trace(const DGSpace& sp, int e, double xi) {
  const int n = sp.degree() + 1;
  const Side side = xi == 0.0 ? Side::minus : Side::plus;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(sp.components(), sp.element_size());
  for (int q = 0; q < sp.components(); ++q)
    for (int j = 0; j < n; ++j) T(q, q * n + j) = sp.basis(e, q, j, xi, 0, side);
  return T;
}

void add_block(std::vector<Eigen::Triplet<double>>& t, const DGSpace& sp, int er, int ec, const Eigen::MatrixXd& blk) {
  const int r0 = sp.dof(er, 0, 0), c0 = sp.dof(ec, 0, 0);
  for (int i = 0; i < blk.rows(); ++i)
    for (int j = 0; j < blk.cols(); ++j)
      if (blk(i, j) != 0.0) t.emplace_back(r0 + i, c0 + j, blk(i, j));
}

bool same_zone(const ZoneMatrices& a, const ZoneMatrices& b) {
  return (a.A - b.A).norm() <= 1e-14 * a.A.norm() && (a.S - b.S).norm() <= 1e-14 * a.S.norm();
}

struct NodeCoupling {
  int left, right;  // elements sharing the node
  int zone;
};

std::vector<NodeCoupling> interior_nodes(const DGSpace& sp, Boundary bc) {
  const int N = sp.mesh().num_elements();
  std::vector<NodeCoupling> nodes;
  for (int e = 0; e + 1 < N; ++e) nodes.push_back({e, e + 1, sp.zone_at(e, Side::plus)});
  if (bc == Boundary::periodic) {
    const int zl = sp.zone_at(N - 1, Side::plus), zr = sp.zone_at(0, Side::minus);
    require(same_zone(sp.zone(zl), sp.zone(zr)), ErrorCode::invalid_argument,
            "periodic boundary needs matching coefficients at both ends");
    nodes.push_back({N - 1, 0, zr});
  }
  return nodes;
}

}  // namespace

DGOperator assemble(const DGSpace& sp, Boundary bc) {
  const int N = sp.mesh().num_elements(), n = sp.degree() + 1, nc = sp.components(), es = sp.element_size();
  const double h = sp.mesh().h();
  std::vector<Eigen::Triplet<double>> tm, tb, ti;
  const int pts = default_points(sp.degree());

  for (int e = 0; e < N; ++e) {
    Eigen::MatrixXd Mloc = Eigen::MatrixXd::Zero(es, es), Bloc = Eigen::MatrixXd::Zero(es, es);
    for (const auto& pc : sp.pieces(e)) {
      const auto& Z = sp.zone(pc.zone);
      const Eigen::MatrixXd SA = Z.S * Z.A;
      const auto qr = gauss_legendre(pts, pc.a, pc.b);
      for (int k = 0; k < pts; ++k) {
        Eigen::MatrixXd V = Eigen::MatrixXd::Zero(nc, es), D = Eigen::MatrixXd::Zero(nc, es);
        for (int q = 0; q < nc; ++q)
          for (int j = 0; j < n; ++j) {
            V(q, q * n + j) = sp.basis(e, q, j, qr.points[k], 0, pc.side);
            D(q, q * n + j) = sp.basis(e, q, j, qr.points[k], 1, pc.side);
          }
        Mloc += qr.weights[k] * h * V.transpose() * Z.S * V;
        Bloc += qr.weights[k] * D.transpose() * SA * V;
      }
    }
    add_block(tm, sp, e, e, Mloc);
    add_block(tb, sp, e, e, Bloc);
    const Eigen::MatrixXd Mi = Mloc.llt().solve(Eigen::MatrixXd::Identity(es, es));
    add_block(ti, sp, e, e, Mi);
  }

  for (const auto& nd : interior_nodes(sp, bc)) {
    const auto& Z = sp.zone(nd.zone);
    const Eigen::MatrixXd TL = trace(sp, nd.left, 1.0), TR = trace(sp, nd.right, 0.0);
    const Eigen::MatrixXd SAp = Z.S * Z.Aplus, SAm = Z.S * Z.Aminus;
    add_block(tb, sp, nd.left, nd.left, -TL.transpose() * SAp * TL);
    add_block(tb, sp, nd.left, nd.right, -TL.transpose() * SAm * TR);
    add_block(tb, sp, nd.right, nd.left, TR.transpose() * SAp * TL);
    add_block(tb, sp, nd.right, nd.right, TR.transpose() * SAm * TR);
  }

  DGOperator op;
  op.boundary = bc;
  op.block_size = es;
  op.inflow_left = Eigen::MatrixXd::Zero(sp.size(), nc);
  op.inflow_right = Eigen::MatrixXd::Zero(sp.size(), nc);
  if (bc != Boundary::periodic) {
    const auto& Z0 = sp.zone(sp.zone_at(0, Side::minus));
    const auto& ZN = sp.zone(sp.zone_at(N - 1, Side::plus));
    const Eigen::MatrixXd T0 = trace(sp, 0, 0.0), TN = trace(sp, N - 1, 1.0);
    add_block(tb, sp, 0, 0, T0.transpose() * Z0.S * Z0.Aminus * T0);
    add_block(tb, sp, N - 1, N - 1, -TN.transpose() * ZN.S * ZN.Aplus * TN);
    op.inflow_left.block(sp.dof(0, 0, 0), 0, es, nc) = T0.transpose() * Z0.S * Z0.Aplus;
    op.inflow_right.block(sp.dof(N - 1, 0, 0), 0, es, nc) = -TN.transpose() * ZN.S * ZN.Aminus;
  }

  const int size = sp.size();
  op.M.resize(size, size);
  op.B.resize(size, size);
  op.Minv.resize(size, size);
  op.M.setFromTriplets(tm.begin(), tm.end());
  op.B.setFromTriplets(tb.begin(), tb.end());
  op.Minv.setFromTriplets(ti.begin(), ti.end());
  op.L = (op.Minv * op.B).pruned();
  return op;
}

Eigen::VectorXd l2_project(const DGSpace& sp, const ZonedField& u) {
  const int N = sp.mesh().num_elements(), n = sp.degree() + 1;
  const double h = sp.mesh().h();
  Eigen::VectorXd U = Eigen::VectorXd::Zero(sp.size());
  for (int e = 0; e < N; ++e) {
    for (int q = 0; q < sp.components(); ++q) {
      Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
      Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
      for (const auto& pc : sp.pieces(e)) {
        const auto qr = gauss_legendre(kDataPoints, pc.a, pc.b);
        for (int k = 0; k < kDataPoints; ++k) {
          const double xi = qr.points[k];
          const double val = u.pieces[q][pc.zone](sp.mesh().left(e) + h * xi);
          for (int i = 0; i < n; ++i) {
            const double pi = sp.basis(e, q, i, xi, 0, pc.side);
            b(i) += qr.weights[k] * pi * val;
            for (int j = 0; j < n; ++j) G(i, j) += qr.weights[k] * pi * sp.basis(e, q, j, xi, 0, pc.side);
          }
        }
      }
      const Eigen::VectorXd c = G.ldlt().solve(b);
      for (int j = 0; j < n; ++j) U(sp.dof(e, q, j)) = c(j);
    }
  }
  return U;
}

Eigen::VectorXd global_radau(const DGSpace& sp, const ZonedField& u) {
  const int N = sp.mesh().num_elements(), n = sp.degree() + 1, nc = sp.components(), m = sp.degree();
  const double h = sp.mesh().h();
  Eigen::VectorXd U = Eigen::VectorXd::Zero(sp.size());
  for (int e = 0; e < N; ++e) {
    if (sp.is_interface(e)) {
      const int i = sp.mesh().interface_in(e);
      std::vector<PiecewiseSmooth> data;
      for (int q = 0; q < nc; ++q) data.push_back(sp.reference_field(u, q, e));
      const auto pr = immersed_radau(m, sp.alpha_hat(e), sp.zone(sp.zone_at(e, Side::minus)),
                                     sp.zone(sp.zone_at(e, Side::plus)), sp.medium().jumps[i], data);
      for (int q = 0; q < nc; ++q)
        for (int j = 0; j < n; ++j) U(sp.dof(e, q, j)) = pr.value[q].coeffs()[j];
      continue;
    }
    const auto& Z = sp.zone(sp.zone_at(e, Side::minus));
    std::vector<Smooth> comps;
    for (int q = 0; q < nc; ++q) comps.push_back(u.pieces[q][sp.zone_at(e, Side::minus)].affine(h, sp.mesh().left(e)));
    Eigen::MatrixXd W(nc, n);
    for (int k = 0; k < nc; ++k) {
      Smooth w = comps[0].scaled(Z.Pinv(k, 0));
      for (int q = 1; q < nc; ++q) w = w + comps[q].scaled(Z.Pinv(k, q));
      const auto a = radau_noninterface(m, Z.speeds(k) > 0.0 ? Side::plus : Side::minus, w);
      for (int j = 0; j < n; ++j) W(k, j) = a[j];
    }
    const Eigen::MatrixXd C = Z.P * W;
    for (int q = 0; q < nc; ++q)
      for (int j = 0; j < n; ++j) U(sp.dof(e, q, j)) = C(q, j);
  }
  return U;
}

Eigen::VectorXd apply_B(const DGSpace& sp, const ZonedField& u, Boundary bc) {
  const int N = sp.mesh().num_elements(), n = sp.degree() + 1, nc = sp.components(), es = sp.element_size();
  const double h = sp.mesh().h();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sp.size());
  auto values_at = [&](double x) {
    Eigen::VectorXd v(nc);
    for (int q = 0; q < nc; ++q) v(q) = u(q, x);
    return v;
  };
  for (int e = 0; e < N; ++e) {
    for (const auto& pc : sp.pieces(e)) {
      const auto& Z = sp.zone(pc.zone);
      const Eigen::MatrixXd SA = Z.S * Z.A;
      const auto qr = gauss_legendre(kDataPoints, pc.a, pc.b);
      for (int k = 0; k < kDataPoints; ++k) {
        const double xi = qr.points[k];
        Eigen::VectorXd uv(nc);
        for (int q = 0; q < nc; ++q) uv(q) = u.pieces[q][pc.zone](sp.mesh().left(e) + h * xi);
        const Eigen::VectorXd f = SA * uv;
        for (int q = 0; q < nc; ++q)
          for (int j = 0; j < n; ++j) out(sp.dof(e, q, j)) += qr.weights[k] * sp.basis(e, q, j, xi, 1, pc.side) * f(q);
      }
    }
  }
  for (const auto& nd : interior_nodes(sp, bc)) {
    const auto& Z = sp.zone(nd.zone);
    const double x = sp.mesh().right(nd.left);
    const Eigen::VectorXd flux = Z.S * Z.A * values_at(x);
    out.segment(sp.dof(nd.left, 0, 0), es) -= trace(sp, nd.left, 1.0).transpose() * flux;
    out.segment(sp.dof(nd.right, 0, 0), es) += trace(sp, nd.right, 0.0).transpose() * flux;
  }
  if (bc != Boundary::periodic) {
    const auto& Z0 = sp.zone(sp.zone_at(0, Side::minus));
    const auto& ZN = sp.zone(sp.zone_at(N - 1, Side::plus));
    out.segment(sp.dof(0, 0, 0), es) +=
        trace(sp, 0, 0.0).transpose() * (Z0.S * Z0.Aminus * values_at(sp.mesh().a()));
    out.segment(sp.dof(N - 1, 0, 0), es) -=
        trace(sp, N - 1, 1.0).transpose() * (ZN.S * ZN.Aplus * values_at(sp.mesh().b()));
  }
  return out;
}

double dissipation(const DGSpace& sp, const Eigen::VectorXd& U, Boundary bc) {
  const int N = sp.mesh().num_elements(), es = sp.element_size();
  auto seg = [&](int e) { return U.segment(sp.dof(e, 0, 0), es); };
  double s = 0.0;
  for (const auto& nd : interior_nodes(sp, bc)) {
    const auto& Z = sp.zone(nd.zone);
    const Eigen::VectorXd jump = trace(sp, nd.left, 1.0) * seg(nd.left) - trace(sp, nd.right, 0.0) * seg(nd.right);
    s += jump.dot(Z.S * Z.Aabs * jump);
  }
  if (bc != Boundary::periodic) {
    const auto& Z0 = sp.zone(sp.zone_at(0, Side::minus));
    const auto& ZN = sp.zone(sp.zone_at(N - 1, Side::plus));
    const Eigen::VectorXd j0 = -trace(sp, 0, 0.0) * seg(0);
    const Eigen::VectorXd jN = trace(sp, N - 1, 1.0) * seg(N - 1);
    s += j0.dot(Z0.S * Z0.Aabs * j0) + jN.dot(ZN.S * ZN.Aabs * jN);
  }
  return -0.5 * s;
}

double energy(const DGOperator& op, const Eigen::VectorXd& U) { return std::sqrt(U.dot(op.M * U)); }

double l2_error(const DGSpace& sp, const Eigen::VectorXd& U, const ZonedField& u) {
  const int N = sp.mesh().num_elements(), n = sp.degree() + 1;
  const double h = sp.mesh().h();
  constexpr int pts = 12;
  double s = 0.0;
  for (int e = 0; e < N; ++e)
    for (const auto& pc : sp.pieces(e)) {
      const auto qr = gauss_legendre(pts, pc.a, pc.b);
      for (int k = 0; k < pts; ++k) {
        const double xi = qr.points[k];
        for (int q = 0; q < sp.components(); ++q) {
          double uh = 0.0;
          for (int j = 0; j < n; ++j) uh += U(sp.dof(e, q, j)) * sp.basis(e, q, j, xi, 0, pc.side);
          const double d = uh - u.pieces[q][pc.zone](sp.mesh().left(e) + h * xi);
          s += qr.weights[k] * h * d * d;
        }
      }
    }
  return std::sqrt(s);
}

}  // namespace ife1d
