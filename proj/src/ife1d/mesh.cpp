// SPDX-License-Identifier: Apache-2.0
#include "ife1d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ife1d/error.hpp"

namespace ife1d {

InterfaceMesh::InterfaceMesh(double a, double b, int n, std::vector<double> interfaces)
    : a_(a), b_(b), h_((b - a) / n), n_(n) {
  require(n >= 1, ErrorCode::invalid_argument, "mesh: element count must be positive");
  require(b > a, ErrorCode::invalid_argument, "mesh: need a < b");
  nodes_.resize(n + 1);
  for (int i = 0; i <= n; ++i) nodes_[i] = a + (b - a) * static_cast<double>(i) / n;
  nodes_[n] = b;

  std::sort(interfaces.begin(), interfaces.end());
  const double tol = 1e-12 * (b - a);
  iface_of_element_.assign(n, -1);
  for (std::size_t i = 0; i < interfaces.size(); ++i) {
    const double alpha = interfaces[i];
    if (!(alpha > a && alpha < b)) {
      std::ostringstream os;
      os << "mesh: interface " << alpha << " outside (" << a << ", " << b << ")";
      fail(ErrorCode::invalid_argument, os.str());
    }
    if (i > 0 && alpha - interfaces[i - 1] <= tol) fail(ErrorCode::invalid_argument, "mesh: duplicate interface");
    const double s = (alpha - a) / h_;
    const double nearest = std::round(s);
    if (std::abs(alpha - (a + nearest * h_)) <= tol) {
      std::ostringstream os;
      os << "interface-on-node: alpha = " << alpha << " coincides with node " << static_cast<long>(nearest);
      fail(ErrorCode::interface_on_node, os.str());
    }
    const int e = std::clamp(static_cast<int>(std::floor(s)), 0, n - 1);
    if (iface_of_element_[e] >= 0) fail(ErrorCode::invalid_argument, "mesh: two interfaces in one element");
    iface_of_element_[e] = static_cast<int>(i);
    ifaces_.push_back({alpha, e + 1, (alpha - nodes_[e]) / h_});
  }

  zone_left_.resize(n);
  int zone = 0;
  for (int e = 0; e < n; ++e) {
    zone_left_[e] = zone;
    if (iface_of_element_[e] >= 0) ++zone;
  }
}

int InterfaceMesh::element_of(double x) const {
  require(x >= a_ - 1e-14 * (b_ - a_) && x <= b_ + 1e-14 * (b_ - a_), ErrorCode::domain, "mesh: point outside domain");
  const int e = static_cast<int>(std::ceil((x - a_) / h_)) - 1;
  return std::clamp(e, 0, n_ - 1);
}

}  // namespace ife1d
