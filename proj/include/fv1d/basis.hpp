#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fv1d/errors.hpp"
#include "fv1d/mesh.hpp"
#include "fv1d/quadrature.hpp"

namespace fv1d {
namespace detail {

/// Barycentric weights for the given interpolation nodes, normalized so
/// the largest magnitude is one (any common scale cancels in the
/// interpolation formulas).
inline std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t m = nodes.size();
  std::vector<double> w(m, 1.0);
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t k = 0; k < m; ++k)
      if (k != q) w[q] *= nodes[q] - nodes[k];
    w[q] = 1.0 / w[q];
  }
  double scale = 0.0;
  for (double v : w) scale = std::max(scale, std::abs(v));
  for (double& v : w) v /= scale;
  return w;
}

/// Index of the interpolation node equal to t (exactly), or -1.
inline int barycentric_hit(std::span<const double> nodes, double t) {
  for (std::size_t q = 0; q < nodes.size(); ++q)
    if (t - nodes[q] == 0.0) return static_cast<int>(q);
  return -1;
}

/// Interpolant value by the barycentric second form.
inline double barycentric_value(std::span<const double> nodes,
                                std::span<const double> weights,
                                std::span<const double> c, double t) {
  const int hit = barycentric_hit(nodes, t);
  if (hit >= 0) return c[hit];
  double num = 0.0, den = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    const double s = weights[q] / (t - nodes[q]);
    num += s * c[q];
    den += s;
  }
  return num / den;
}

/// Interpolant derivative.  Off the nodes this uses
/// p'(t) = sum_q w_q (p(t) - c_q) / (t - t_q)^2  /  sum_q w_q / (t - t_q),
/// which inherits the second form's insensitivity to nearby nodes; at a
/// node it falls back to the differentiation-matrix row.
inline double barycentric_derivative(std::span<const double> nodes,
                                     std::span<const double> weights,
                                     std::span<const double> c, double t) {
  const std::size_t m = nodes.size();
  const int hit = barycentric_hit(nodes, t);
  if (hit >= 0) {
    const std::size_t q0 = static_cast<std::size_t>(hit);
    double d = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      if (q == q0) continue;
      d += (weights[q] / weights[q0]) * (c[q] - c[q0]) / (nodes[q0] - nodes[q]);
    }
    return d;
  }
  const double p = barycentric_value(nodes, weights, c, t);
  double num = 0.0, den = 0.0;
  for (std::size_t q = 0; q < m; ++q) {
    const double s = weights[q] / (t - nodes[q]);
    den += s;
    num += s * (p - c[q]) / (t - nodes[q]);
  }
  return num / den;
}

}  // namespace detail

struct ShapeEval {
  double value;
  double derivative;
};

/// Value and derivative of the j-th cardinal (Lagrange) function on the
/// given nodes at t.  Degree is nodes.size() - 1; r names it for callers
/// holding a Lobatto rule of that order.
inline ShapeEval shape_eval(int r, std::span<const double> nodes, int j,
                            double t) {
  if (nodes.size() != static_cast<std::size_t>(r) + 1)
    throw std::invalid_argument("shape_eval: nodes must hold r + 1 entries");
  if (j < 0 || j > r) throw std::invalid_argument("shape_eval: j out of range");
  const auto w = detail::barycentric_weights(nodes);
  std::vector<double> c(nodes.size(), 0.0);
  c[j] = 1.0;
  return {detail::barycentric_value(nodes, w, c, t),
          detail::barycentric_derivative(nodes, w, c, t)};
}

/// Continuous piecewise polynomial trial space of degree r whose
/// coefficients live at the elementwise Lobatto points, with the two
/// domain-endpoint values pinned to zero.  Dimension N r - 1.
class TrialSpace {
 public:
  TrialSpace(Mesh mesh, int degree)
      : mesh_(std::move(mesh)),
        degree_(degree),
        lobatto_(lobatto_rule(degree)),
        bary_(detail::barycentric_weights(lobatto_.nodes)) {
    if (mesh_.num_elements() * degree_ < 2)
      throw MeshTooCoarse("TrialSpace: no interior Lobatto nodes");
  }

  const Mesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  const QuadRule& lobatto() const { return lobatto_; }
  std::span<const double> barycentric() const { return bary_; }

  int dim() const { return mesh_.num_elements() * degree_ - 1; }

  /// Unknown index for local Lobatto node q of element e, or -1 for the
  /// two pinned boundary nodes.  Neighbors share the node on their
  /// common edge, so dof_index(e, r) == dof_index(e + 1, 0).
  int dof_index(int e, int q) const {
    const int global = e * degree_ + q;
    if (global == 0 || global == mesh_.num_elements() * degree_) return -1;
    return global - 1;
  }

  double lobatto_point(int e, int q) const {
    return mesh_.from_reference(e, lobatto_.nodes[q]);
  }

  /// All r + 1 cardinal values and reference derivatives at reference
  /// coordinate t, in O(r) after the precomputed weights.
  void eval_basis(double t, std::span<double> values,
                  std::span<double> derivs) const {
    const auto& x = lobatto_.nodes;
    const std::size_t m = x.size();
    const int hit = detail::barycentric_hit(x, t);
    if (hit >= 0) {
      const std::size_t q0 = static_cast<std::size_t>(hit);
      double diag = 0.0;
      for (std::size_t q = 0; q < m; ++q) {
        values[q] = (q == q0) ? 1.0 : 0.0;
        if (q != q0) {
          derivs[q] = (bary_[q] / bary_[q0]) / (x[q0] - x[q]);
          diag -= derivs[q];
        }
      }
      derivs[q0] = diag;
      return;
    }
    double den = 0.0, den2 = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      const double s = bary_[q] / (t - x[q]);
      values[q] = s;  // stash s_q
      derivs[q] = s / (t - x[q]);
      den += s;
      den2 += derivs[q];
    }
    for (std::size_t q = 0; q < m; ++q) {
      const double u = derivs[q];
      values[q] /= den;
      derivs[q] = (values[q] * den2 - u) / den;
    }
  }

 private:
  Mesh mesh_;
  int degree_;
  QuadRule lobatto_;
  std::vector<double> bary_;
};

/// A member of a trial space, determined by its interior nodal values.
class Solution {
 public:
  Solution(TrialSpace space, std::vector<double> coefficients)
      : space_(std::move(space)), coeffs_(std::move(coefficients)) {
    if (static_cast<int>(coeffs_.size()) != space_.dim())
      throw LengthMismatch("Solution: coefficient count != space dimension");
  }

  const TrialSpace& space() const { return space_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// Nodal value at local Lobatto node q of element e (exact).
  double node_value(int e, int q) const {
    const int m = space_.dof_index(e, q);
    return m < 0 ? 0.0 : coeffs_[m];
  }

  /// Value at reference coordinate t inside element e.
  double value_ref(int e, double t) const {
    gather(e);
    return detail::barycentric_value(space_.lobatto().nodes, space_.barycentric(),
                                     local_, t);
  }

  /// Physical-space derivative at reference coordinate t inside element e.
  double deriv_ref(int e, double t) const {
    gather(e);
    const double dref = detail::barycentric_derivative(
        space_.lobatto().nodes, space_.barycentric(), local_, t);
    return dref * 2.0 / space_.mesh().width(e);
  }

  double value(double x) const {
    const int e = space_.mesh().element_of(x);
    return value_ref(e, space_.mesh().to_reference(e, x));
  }

  /// Derivative at x.  The piecewise derivative jumps at interior primal
  /// nodes; there the left element's polynomial is used.
  double deriv(double x) const {
    const Mesh& mesh = space_.mesh();
    int e = mesh.element_of(x);
    if (e > 0 && x == mesh.node(e)) --e;
    return deriv_ref(e, mesh.to_reference(e, x));
  }

 private:
  void gather(int e) const {
    local_.resize(space_.degree() + 1);
    for (int q = 0; q <= space_.degree(); ++q) local_[q] = node_value(e, q);
  }

  TrialSpace space_;
  std::vector<double> coeffs_;
  mutable std::vector<double> local_;
};

/// Nodal interpolant of u into the trial space.  u must vanish at the
/// domain endpoints, where the space pins its values.
template <class F>
Solution interpolate(const TrialSpace& space, F&& u) {
  const Mesh& mesh = space.mesh();
  if (std::abs(u(mesh.a())) > 1e-12 || std::abs(u(mesh.b())) > 1e-12)
    throw BoundaryMismatch("interpolate: u does not vanish at the endpoints");
  std::vector<double> c(space.dim());
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int q = 0; q <= space.degree(); ++q) {
      const int m = space.dof_index(e, q);
      if (m >= 0) c[m] = u(space.lobatto_point(e, q));
    }
  return Solution(space, std::move(c));
}

}  // namespace fv1d
