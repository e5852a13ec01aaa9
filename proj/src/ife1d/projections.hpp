// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "ife1d/acoustic.hpp"
#include "ife1d/rife.hpp"
#include "ife1d/smooth.hpp"

namespace ife1d {

struct ProjectionReport {
  double residual = 0.0;   // largest violation of the defining conditions
  double condition = 1.0;  // condition estimate of the solved system
  std::vector<std::string> warnings;
};

template <class T>
struct Projected {
  T value;
  ProjectionReport report;
};

/// Gauss points per side used when integrating non-polynomial data.
inline constexpr int kDataPoints = 24;

/// Weighted moment projection onto V^m: (w_i, (v - pi v)^(i)) = 0 for i = 0..m,
/// where w_i is r_i on the left piece and 1 on the right.
Projected<RifeFunction> moment_projection(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v);

/// sqrt(1 + sum_{k<=i} prod_{k<=j<=i} max(r_j^2, r_j^-2)).
double bramble_hilbert_constant(int i, const JumpSequence& r);

/// ||v - pi v||_i / |v - pi v|_{m+1} for i = 0..m+1.
std::vector<double> bramble_hilbert_ratios(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v);

/// Weighted L2 projection onto V^m.
Projected<RifeFunction> l2_projection(int m, double alpha_hat, const JumpSequence& r, double w_minus, double w_plus,
                                      const PiecewiseSmooth& v);

/// Endpoint-interpolating projection, orthogonal to V^{m-2} with shifted jumps; needs r_0 = 1.
Projected<RifeFunction> lobatto_projection(int m, double alpha_hat, const JumpSequence& r, const PiecewiseSmooth& v);

/// Cubic Hermite basis for jumps (1, 1, rho, rho), ordered by v(0), v(1), v'(0), v'(1).
std::array<RifeFunction, 4> hermite_basis(double alpha_hat, double rho);

RifeFunction hermite_interpolate(double alpha_hat, double rho, const PiecewiseSmooth& v);

/// Radau projection on [0, 1] without interface: L2 onto P^{m-1} plus a multiple of the
/// degree-m Legendre polynomial fixing the value at the outflow end.
/// Returns coefficients in the shifted Legendre basis.
std::vector<double> radau_noninterface(int m, Side outflow, const Smooth& v);

/// Immersed Radau projection for an n-component system on the interface element.
/// Characteristic outflow values are matched at both ends and each component is
/// S-weighted orthogonal to its own V^{m-1}.
Projected<std::vector<RifeFunction>> immersed_radau(int m, double alpha_hat, const ZoneMatrices& left,
                                                     const ZoneMatrices& right, const std::vector<JumpSequence>& jumps,
                                                     const std::vector<PiecewiseSmooth>& u);

}  // namespace ife1d
