#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fv1d/basis.hpp"
#include "fv1d/errors.hpp"
#include "fv1d/mesh.hpp"

namespace fv1d {

/// Piecewise reconstruction of the solution derivative, one order better
/// than the raw derivative at every point rather than only at Gauss
/// points.
///
/// Around each interior primal node one polynomial of degree 2r - 1
/// interpolates the computed derivative at the 2r Gauss points of the
/// two elements meeting there.  On an interior element the
/// reconstruction averages the polynomials of its two endpoints; the
/// first and last elements use their single interior neighbour.  The
/// result is double valued at interior nodes, so evaluation takes the
/// element explicitly where the side matters.
class RecoveredDerivative {
 public:
  RecoveredDerivative(Mesh mesh, int trial_degree,
                      std::vector<std::vector<double>> stencil_nodes,
                      std::vector<std::vector<double>> stencil_values)
      : mesh_(std::move(mesh)), degree_(2 * trial_degree - 1) {
    const int n = mesh_.num_elements();
    if (n < 2)
      throw MeshTooCoarse("RecoveredDerivative: need at least two elements");
    if (static_cast<int>(stencil_nodes.size()) != n - 1 ||
        static_cast<int>(stencil_values.size()) != n - 1)
      throw LengthMismatch("RecoveredDerivative: one stencil per interior node");
    stencils_.reserve(n - 1);
    for (int k = 0; k + 1 < n; ++k) {
      if (stencil_nodes[k].size() != static_cast<std::size_t>(2 * trial_degree) ||
          stencil_values[k].size() != stencil_nodes[k].size())
        throw LengthMismatch("RecoveredDerivative: stencil size != 2r");
      Stencil s;
      s.nodes = std::move(stencil_nodes[k]);
      s.values = std::move(stencil_values[k]);
      s.weights = detail::barycentric_weights(s.nodes);
      stencils_.push_back(std::move(s));
    }
  }

  const Mesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }

  /// Value of the piece belonging to element e, valid on all of that
  /// element and giving the one-sided limit at its endpoints.
  double value_on_element(int e, double x) const {
    const int n = mesh_.num_elements();
    if (e < 0 || e >= n)
      throw std::out_of_range("RecoveredDerivative: element index");
    if (e == 0) return stencil_value(0, x);
    if (e == n - 1) return stencil_value(n - 2, x);
    return 0.5 * (stencil_value(e - 1, x) + stencil_value(e, x));
  }

  /// Value at x using the mesh's element lookup (the right element at
  /// interior nodes).
  double value(double x) const {
    return value_on_element(mesh_.element_of(x), x);
  }

 private:
  struct Stencil {
    std::vector<double> nodes, weights, values;
  };

  double stencil_value(int k, double x) const {
    const Stencil& s = stencils_[k];
    return detail::barycentric_value(s.nodes, s.weights, s.values, x);
  }

  Mesh mesh_;
  int degree_;
  std::vector<Stencil> stencils_;
};

/// Builds the recovered derivative of a computed solution.  The dual
/// partition supplies the Gauss abscissae, so the interpolation points
/// are bitwise the ones the solver used.
inline RecoveredDerivative recover(const Solution& sol, const Mesh& mesh,
                                   const DualPartition& dual) {
  const TrialSpace& space = sol.space();
  const int r = space.degree();
  if (dual.degree() != r)
    throw std::invalid_argument("recover: dual degree != trial degree");
  if (mesh.nodes() != space.mesh().nodes() ||
      dual.mesh().nodes() != mesh.nodes())
    throw std::invalid_argument("recover: solution, mesh, and dual differ");
  const int n = mesh.num_elements();
  if (n < 2) throw MeshTooCoarse("recover: need at least two elements");

  std::vector<std::vector<double>> nodes(n - 1), values(n - 1);
  for (int k = 0; k + 1 < n; ++k) {
    nodes[k].reserve(2 * r);
    values[k].reserve(2 * r);
    for (int e = k; e <= k + 1; ++e)
      for (int j = 0; j < r; ++j) {
        const int t = e * r + j;
        nodes[k].push_back(dual.point(t));
        values[k].push_back(sol.deriv_ref(e, dual.reference_node(t)));
      }
  }
  return RecoveredDerivative(mesh, r, std::move(nodes), std::move(values));
}

/// Largest deviation of the recovered derivative from a reference
/// derivative over a uniform grid joined with every element boundary,
/// where both one-sided limits are inspected.
template <class F>
double recovered_sup_error(const RecoveredDerivative& rec, F&& u_prime,
                           int grid_points = 1001) {
  if (grid_points < 2)
    throw std::invalid_argument("recovered_sup_error: need two or more grid points");
  const Mesh& mesh = rec.mesh();
  const double a = mesh.nodes().front();
  const double b = mesh.nodes().back();
  double sup = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double lo = mesh.node(e), hi = mesh.node(e + 1);
    auto probe = [&](double x) {
      sup = std::max(sup, std::abs(u_prime(x) - rec.value_on_element(e, x)));
    };
    probe(lo);
    probe(hi);
    for (int s = 1; s + 1 < grid_points; ++s) {
      const double x = a + (b - a) * s / (grid_points - 1);
      if (x > lo && x < hi) probe(x);
    }
  }
  return sup;
}

}  // namespace fv1d
