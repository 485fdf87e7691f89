#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fv1d/banded.hpp"
#include "fv1d/basis.hpp"
#include "fv1d/errors.hpp"
#include "fv1d/mesh.hpp"
#include "fv1d/problems.hpp"
#include "fv1d/quadrature.hpp"

namespace fv1d {

struct FvmSystem {
  TrialSpace space;
  BandedMatrix matrix;
  std::vector<double> rhs;
};

/// Assemble the control-volume equations.  Volume k = [g_k, g_{k+1}]
/// contributes the row
///   alpha(g_k) u'(g_k) - alpha(g_{k+1}) u'(g_{k+1})
///     + int_{g_k}^{g_{k+1}} (beta u' + gamma u) dx
///   = int_{g_k}^{g_{k+1}} f dx.
/// Integrals over a straddling volume are split at the crossed primal
/// node so each piece sees a single polynomial, and every piece uses a
/// mapped Gauss rule of the given order (default max(r + 2, 8), enough
/// that the quadrature error is far below the discretization error).
/// The matrix has bandwidth r on each side.
inline FvmSystem assemble(const Problem& prob, const TrialSpace& space,
                          const DualPartition& dual, int quad_order = 0) {
  const int r = space.degree();
  if (dual.degree() != r)
    throw std::invalid_argument("assemble: dual degree != trial degree");
  if (dual.mesh().nodes() != space.mesh().nodes())
    throw std::invalid_argument("assemble: dual and trial meshes differ");
  if (!prob.source)
    throw std::invalid_argument("assemble: problem has no source term");
  audit_coefficients(prob);
  const Mesh& mesh = space.mesh();
  if (prob.a != mesh.a() || prob.b != mesh.b())
    throw std::invalid_argument("assemble: mesh does not span the problem domain");
  if (quad_order <= 0) quad_order = std::max(r + 2, 8);
  const QuadRule quad = gauss_rule(quad_order);

  const int n = space.dim();
  FvmSystem sys{space, BandedMatrix(n, r, r), std::vector<double>(n, 0.0)};
  std::vector<double> vals(r + 1), ders(r + 1);

  auto add_flux = [&](int row, int t, double sign) {
    const int e = dual.element_of_point(t);
    space.eval_basis(dual.reference_node(t), vals, ders);
    const double coef =
        sign * prob.alpha(dual.point(t)) * 2.0 / mesh.width(e);
    for (int q = 0; q <= r; ++q) {
      const int m = space.dof_index(e, q);
      if (m >= 0) sys.matrix.at(row, m) += coef * ders[q];
    }
  };

  auto add_piece = [&](int row, int e, double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const double dref = 2.0 / mesh.width(e);
    for (std::size_t qp = 0; qp < quad.nodes.size(); ++qp) {
      const double x = mid + half * quad.nodes[qp];
      const double w = half * quad.weights[qp];
      space.eval_basis(mesh.to_reference(e, x), vals, ders);
      const double bx = prob.beta(x);
      const double cx = prob.gamma(x);
      for (int q = 0; q <= r; ++q) {
        const int m = space.dof_index(e, q);
        if (m >= 0)
          sys.matrix.at(row, m) += w * (bx * dref * ders[q] + cx * vals[q]);
      }
    }
  };

  for (int k = 0; k < n; ++k) {
    add_flux(k, k, +1.0);
    add_flux(k, k + 1, -1.0);
    if (dual.straddles(k)) {
      const double node = dual.straddle_node(k);
      add_piece(k, dual.home_element(k), dual.left(k), node);
      add_piece(k, dual.home_element(k) + 1, node, dual.right(k));
      const std::vector<double> breaks{node};
      sys.rhs[k] =
          composite_integrate(prob.source, dual.left(k), dual.right(k), breaks, quad);
    } else {
      add_piece(k, dual.home_element(k), dual.left(k), dual.right(k));
      sys.rhs[k] =
          composite_integrate(prob.source, dual.left(k), dual.right(k), {}, quad);
    }
  }
  return sys;
}

inline Solution solve(const FvmSystem& sys) {
  return Solution(sys.space, solve_banded(sys.matrix, sys.rhs));
}

}  // namespace fv1d
