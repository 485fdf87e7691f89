#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fv1d/errors.hpp"
#include "fv1d/quadrature.hpp"

namespace fv1d {

/// Partition of an interval [a, b] into elements with strictly
/// increasing nodes x_0 = a < x_1 < ... < x_N = b.
class Mesh {
 public:
  explicit Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
      throw InvalidInterval("Mesh: need at least two nodes");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
      if (!(nodes_[i] > nodes_[i - 1]))
        throw InvalidInterval("Mesh: nodes must be strictly increasing");
  }

  double a() const { return nodes_.front(); }
  double b() const { return nodes_.back(); }
  int num_elements() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  double node(int i) const { return nodes_.at(i); }
  double width(int e) const { return nodes_.at(e + 1) - nodes_.at(e); }

  double max_width() const {
    double h = 0.0;
    for (int e = 0; e < num_elements(); ++e) h = std::max(h, width(e));
    return h;
  }

  /// Element containing x.  Interior nodes belong to the element on
  /// their right; x = b belongs to the last element.
  int element_of(double x) const {
    if (x < a() || x > b()) throw OutOfDomain("Mesh: point outside [a, b]");
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const int e = static_cast<int>(it - nodes_.begin()) - 1;
    return std::clamp(e, 0, num_elements() - 1);
  }

  /// Affine map from the reference interval [-1, 1] onto element e.
  /// The endpoints map to the stored nodes bit for bit.
  double from_reference(int e, double t) const {
    if (t == -1.0) return nodes_.at(e);
    if (t == 1.0) return nodes_.at(e + 1);
    return 0.5 * (nodes_.at(e) + nodes_.at(e + 1)) + 0.5 * t * width(e);
  }

  double to_reference(int e, double x) const {
    if (x == nodes_.at(e)) return -1.0;
    if (x == nodes_.at(e + 1)) return 1.0;
    return (2.0 * x - nodes_.at(e) - nodes_.at(e + 1)) / width(e);
  }

 private:
  std::vector<double> nodes_;
};

inline Mesh uniform_mesh(double a, double b, int n) {
  if (!(a < b)) throw InvalidInterval("uniform_mesh: need a < b");
  if (n < 1) throw std::invalid_argument("uniform_mesh: need n >= 1");
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) x[i] = a + (b - a) * i / n;
  x[0] = a;
  x[n] = b;
  return Mesh(std::move(x));
}

/// Mesh whose widths grow geometrically, h_{i+1} = ratio * h_i.
/// Ratios below one refine toward the right endpoint instead.
inline Mesh graded_mesh(double a, double b, int n, double ratio) {
  if (!(a < b)) throw InvalidInterval("graded_mesh: need a < b");
  if (n < 1) throw std::invalid_argument("graded_mesh: need n >= 1");
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw std::invalid_argument("graded_mesh: ratio must be positive");
  if (ratio == 1.0) return uniform_mesh(a, b, n);
  const double h1 = (b - a) * (ratio - 1.0) / (std::pow(ratio, n) - 1.0);
  std::vector<double> x(n + 1);
  x[0] = a;
  double h = h1;
  for (int i = 1; i < n; ++i) {
    x[i] = x[i - 1] + h;
    h *= ratio;
  }
  x[n] = b;
  return Mesh(std::move(x));
}

/// Gauss-point dual partition: the r Gauss points of every element in
/// global order g_0 < g_1 < ... < g_{N r - 1}.  Control volume k spans
/// [g_k, g_{k+1}] for k = 0 .. N r - 2, so consecutive volumes share
/// their breakpoint bit for bit; the end slivers [a, g_0] and
/// [g_last, b] carry no volume and complete the tiling of [a, b].
class DualPartition {
 public:
  DualPartition(Mesh mesh, QuadRule rule)
      : mesh_(std::move(mesh)), rule_(std::move(rule)) {
    if (rule_.family != QuadFamily::gauss)
      throw std::invalid_argument("DualPartition: needs a Gauss rule");
    const int n = mesh_.num_elements();
    const int r = rule_.order;
    if (n * r < 2)
      throw MeshTooCoarse("DualPartition: fewer than two dual points");
    points_.reserve(static_cast<std::size_t>(n) * r);
    for (int e = 0; e < n; ++e)
      for (int j = 0; j < r; ++j)
        points_.push_back(mesh_.from_reference(e, rule_.nodes[j]));
    for (std::size_t k = 1; k < points_.size(); ++k)
      if (!(points_[k] > points_[k - 1]))
        throw InvalidInterval("DualPartition: dual points not increasing");
  }

  int degree() const { return rule_.order; }
  const Mesh& mesh() const { return mesh_; }
  const QuadRule& rule() const { return rule_; }

  int num_points() const { return static_cast<int>(points_.size()); }
  int num_volumes() const { return num_points() - 1; }
  double point(int t) const { return points_.at(t); }
  int element_of_point(int t) const { return t / rule_.order; }
  int local_index(int t) const { return t % rule_.order; }
  /// reference coordinate of global point t inside its element
  double reference_node(int t) const { return rule_.nodes[local_index(t)]; }
  /// physical Gauss weight (h_e / 2) A_j attached to global point t
  double point_weight(int t) const {
    return 0.5 * mesh_.width(element_of_point(t)) * rule_.weights[local_index(t)];
  }

  double left(int k) const { return points_.at(k); }
  double right(int k) const { return points_.at(k + 1); }
  /// element containing the left endpoint of volume k
  int home_element(int k) const { return k / rule_.order; }
  /// whether volume k crosses the primal node between two elements
  bool straddles(int k) const { return local_index(k) == rule_.order - 1; }
  /// the crossed primal node (only meaningful when straddles(k))
  double straddle_node(int k) const { return mesh_.node(home_element(k) + 1); }

  std::pair<double, double> left_sliver() const {
    return {mesh_.a(), points_.front()};
  }
  std::pair<double, double> right_sliver() const {
    return {points_.back(), mesh_.b()};
  }

 private:
  Mesh mesh_;
  QuadRule rule_;
  std::vector<double> points_;
};

inline DualPartition build_dual(const Mesh& mesh, int r, const QuadRule& rule) {
  if (rule.order != r)
    throw std::invalid_argument("build_dual: rule order does not match r");
  return DualPartition(mesh, rule);
}

}  // namespace fv1d
