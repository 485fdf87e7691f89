#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "fv1d/assembly.hpp"
#include "fv1d/errors.hpp"

namespace fv1d {

/// Discrete norms of a piecewise-constant test function given by its
/// values on the interior dual volumes (the two end slivers are pinned
/// to zero).  The seminorm squares every jump across a dual breakpoint,
/// including the closing jumps at the domain ends, and divides by the
/// width of the element holding that breakpoint; the zero-order part
/// weights each volume value by its home element width.
struct TestNorms {
  double seminorm1 = 0.0;
  double norm0 = 0.0;
  double full = 0.0;
};

inline TestNorms test_norms(std::span<const double> w, const Mesh& mesh,
                            const DualPartition& dual) {
  if (dual.mesh().nodes() != mesh.nodes())
    throw std::invalid_argument("test_norms: mesh and dual partition differ");
  const int nt = dual.num_points();
  if (static_cast<int>(w.size()) != nt - 1)
    throw LengthMismatch("test_norms: expected one value per interior volume");

  double semi2 = 0.0;
  for (int t = 0; t < nt; ++t) {
    const double left = t == 0 ? 0.0 : w[t - 1];
    const double right = t == nt - 1 ? 0.0 : w[t];
    const double jump = right - left;
    semi2 += jump * jump / mesh.width(dual.element_of_point(t));
  }
  double zero2 = 0.0;
  for (int k = 0; k < nt - 1; ++k)
    zero2 += mesh.width(dual.home_element(k)) * w[k] * w[k];

  TestNorms norms;
  norms.seminorm1 = std::sqrt(semi2);
  norms.norm0 = std::sqrt(zero2);
  norms.full = std::sqrt(semi2 + zero2);
  return norms;
}

/// Transfer of a trial function into the test space: the jump of the
/// image across dual point t is the Gauss weight of t times v' there,
/// so the volume values are prefix sums.  For any trial function the
/// weights integrate v' exactly and the closing jump returns to zero.
inline std::vector<double> project_to_test(const Solution& v,
                                           const DualPartition& dual) {
  const TrialSpace& space = v.space();
  if (dual.degree() != space.degree() ||
      dual.mesh().nodes() != space.mesh().nodes())
    throw std::invalid_argument(
        "project_to_test: dual partition does not match the solution space");
  const int nt = dual.num_points();
  std::vector<double> w(nt - 1);
  double sum = 0.0;
  for (int k = 0; k < nt - 1; ++k) {
    const int e = dual.element_of_point(k);
    sum += dual.point_weight(k) * v.deriv_ref(e, dual.reference_node(k));
    w[k] = sum;
  }
  return w;
}

namespace detail {

/// Gram matrix of the trial space under the full first-order norm,
/// integrated elementwise with a Gauss rule exact for the products.
inline Eigen::MatrixXd trial_gram(const TrialSpace& space) {
  const Mesh& mesh = space.mesh();
  const int r = space.degree();
  const int dim = space.dim();
  const QuadRule rule = gauss_rule(r + 1);

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<double> vals(r + 1), ders(r + 1);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double h = mesh.width(e);
    for (int g = 0; g < rule.order; ++g) {
      const double scale = 0.5 * h * rule.weights[g];
      space.eval_basis(rule.nodes[g], vals, ders);
      for (int i = 0; i <= r; ++i) {
        const int mi = space.dof_index(e, i);
        if (mi < 0) continue;
        const double di = ders[i] * 2.0 / h;
        for (int j = 0; j <= r; ++j) {
          const int mj = space.dof_index(e, j);
          if (mj < 0) continue;
          const double dj = ders[j] * 2.0 / h;
          gram(mi, mj) += scale * (vals[i] * vals[j] + di * dj);
        }
      }
    }
  }
  return gram;
}

/// Gram matrix of the test space under the full discrete norm of
/// test_norms, over the interior volume values.
inline Eigen::MatrixXd test_gram(const Mesh& mesh, const DualPartition& dual) {
  const int nt = dual.num_points();
  const int dim = nt - 1;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  for (int t = 0; t < nt; ++t) {
    const double inv = 1.0 / mesh.width(dual.element_of_point(t));
    const int p = t - 1;
    const int q = t;
    if (p >= 0) gram(p, p) += inv;
    if (q < dim) gram(q, q) += inv;
    if (p >= 0 && q < dim) {
      gram(p, q) -= inv;
      gram(q, p) -= inv;
    }
  }
  for (int k = 0; k < dim; ++k)
    gram(k, k) += mesh.width(dual.home_element(k));
  return gram;
}

inline Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& gram,
                                    const char* which) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success)
    throw SingularGram(std::string("infsup_estimate: eigensolve failed for ") +
                       which);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const double floor = 1e-12 * lam(lam.size() - 1);
  Eigen::VectorXd inv(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= floor)
      throw SingularGram(std::string("infsup_estimate: ") + which +
                         " gram matrix is numerically singular");
    inv(i) = 1.0 / std::sqrt(lam(i));
  }
  return eig.eigenvectors() * inv.asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace detail

/// Smallest singular value of the discretization matrix after both
/// sides are scaled to unit norm: the trial side by the first-order
/// Gram, the test side by the discrete test-norm Gram.  Bounded away
/// from zero under refinement exactly when the scheme is stable.
inline double infsup_estimate(const Problem& prob, const Mesh& mesh, int r) {
  TrialSpace space(mesh, r);
  const DualPartition dual = build_dual(mesh, r, gauss_rule(r));
  const FvmSystem sys = assemble(prob, space, dual);
  const int dim = space.dim();

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int j0 = std::max(0, i - sys.matrix.lower());
    const int j1 = std::min(dim - 1, i + sys.matrix.upper());
    for (int j = j0; j <= j1; ++j) a(i, j) = sys.matrix.get(i, j);
  }

  const Eigen::MatrixXd wv = detail::inverse_sqrt(detail::test_gram(mesh, dual),
                                                  "test");
  const Eigen::MatrixXd vv = detail::inverse_sqrt(detail::trial_gram(space),
                                                  "trial");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(wv * a * vv);
  return svd.singularValues()(dim - 1);
}

}  // namespace fv1d
