// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace ife1d {

struct InterfaceLocation {
  double alpha;      // physical position
  int k0;            // 1-based index of the element containing alpha
  double alpha_hat;  // reference position in (0, 1)
};

/// Uniform partition of [a, b] with interfaces strictly inside elements.
class InterfaceMesh {
 public:
  /// Throws interface_on_node, or invalid_argument for out-of-range, duplicate, or co-located interfaces.
  InterfaceMesh(double a, double b, int n, std::vector<double> interfaces);

  double a() const { return a_; }
  double b() const { return b_; }
  double h() const { return h_; }
  int num_elements() const { return n_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<InterfaceLocation>& interfaces() const { return ifaces_; }

  double left(int e) const { return nodes_[e]; }
  double right(int e) const { return nodes_[e + 1]; }
  /// 0-based element containing x (right-closed except for the first element).
  int element_of(double x) const;
  /// Index into interfaces() for 0-based element e, or -1.
  int interface_in(int e) const { return iface_of_element_[e]; }
  /// Zone index of element e's left end (zones are separated by interfaces).
  int zone_left(int e) const { return zone_left_[e]; }

 private:
  double a_, b_, h_;
  int n_;
  std::vector<double> nodes_;
  std::vector<InterfaceLocation> ifaces_;
  std::vector<int> iface_of_element_;
  std::vector<int> zone_left_;
};

}  // namespace ife1d
