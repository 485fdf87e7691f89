#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "fv1d/diagnostics.hpp"
#include "fv1d/problems.hpp"

using namespace fv1d;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> random_vector(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = coef(rng);
  return v;
}

/// Broken first-order seminorm of a trial function by direct Gauss
/// quadrature, exact for the polynomial degree at hand.
double trial_seminorm(const Solution& v) {
  const TrialSpace& space = v.space();
  const Mesh& mesh = space.mesh();
  const QuadRule rule = gauss_rule(space.degree() + 1);
  double s = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int g = 0; g < rule.order; ++g) {
      const double d = v.deriv_ref(e, rule.nodes[g]);
      s += 0.5 * mesh.width(e) * rule.weights[g] * d * d;
    }
  return std::sqrt(s);
}

double trial_l2(const Solution& v) {
  const TrialSpace& space = v.space();
  const Mesh& mesh = space.mesh();
  const QuadRule rule = gauss_rule(space.degree() + 1);
  double s = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e)
    for (int g = 0; g < rule.order; ++g) {
      const double val = v.value_ref(e, rule.nodes[g]);
      s += 0.5 * mesh.width(e) * rule.weights[g] * val * val;
    }
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("zero test vector has zero norms") {
  const Mesh mesh = uniform_mesh(0.0, 1.0, 4);
  const DualPartition dual = build_dual(mesh, 3, gauss_rule(3));
  const std::vector<double> w(dual.num_points() - 1, 0.0);
  const TestNorms norms = test_norms(w, mesh, dual);
  REQUIRE(norms.seminorm1 == 0.0);
  REQUIRE(norms.norm0 == 0.0);
  REQUIRE(norms.full == 0.0);
}

TEST_CASE("single element test norms by hand") {
  const Mesh mesh = uniform_mesh(0.0, 1.0, 1);
  const DualPartition dual = build_dual(mesh, 2, gauss_rule(2));
  const std::vector<double> w = {1.0};
  const TestNorms norms = test_norms(w, mesh, dual);
  REQUIRE_THAT(norms.seminorm1, WithinRel(std::sqrt(2.0), 1e-15));
  REQUIRE_THAT(norms.norm0, WithinRel(1.0, 1e-15));
  REQUIRE_THAT(norms.full, WithinRel(std::sqrt(3.0), 1e-15));
}

TEST_CASE("full test norm squares add") {
  std::mt19937 rng(11);
  for (int r : {2, 3, 5}) {
    const Mesh mesh = graded_mesh(0.0, 1.0, 6, 1.15);
    const DualPartition dual = build_dual(mesh, r, gauss_rule(r));
    const std::vector<double> w = random_vector(rng, dual.num_points() - 1);
    const TestNorms norms = test_norms(w, mesh, dual);
    REQUIRE_THAT(norms.full * norms.full,
                 WithinRel(norms.seminorm1 * norms.seminorm1 +
                               norms.norm0 * norms.norm0,
                           1e-12));
  }
}

TEST_CASE("test norms validate their input") {
  const Mesh mesh = uniform_mesh(0.0, 1.0, 4);
  const DualPartition dual = build_dual(mesh, 2, gauss_rule(2));
  REQUIRE_THROWS_AS(test_norms(std::vector<double>(3, 1.0), mesh, dual),
                    LengthMismatch);
  const Mesh other = uniform_mesh(0.0, 1.0, 5);
  REQUIRE_THROWS_AS(
      test_norms(std::vector<double>(dual.num_points() - 1, 1.0), other, dual),
      std::invalid_argument);
}

TEST_CASE("test gram matrix reproduces the full norm") {
  std::mt19937 rng(12);
  const Mesh mesh = graded_mesh(0.0, 1.0, 5, 1.2);
  const DualPartition dual = build_dual(mesh, 3, gauss_rule(3));
  const int dim = dual.num_points() - 1;
  const Eigen::MatrixXd gram = detail::test_gram(mesh, dual);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> w = random_vector(rng, dim);
    const Eigen::Map<const Eigen::VectorXd> wv(w.data(), dim);
    const double quad = wv.dot(gram * wv);
    const TestNorms norms = test_norms(w, mesh, dual);
    REQUIRE_THAT(quad, WithinRel(norms.full * norms.full, 1e-12));
  }
}

TEST_CASE("trial gram matrix reproduces the first order norm") {
  std::mt19937 rng(13);
  const Mesh mesh = graded_mesh(0.0, 1.0, 4, 1.25);
  for (int r : {2, 4}) {
    TrialSpace space(mesh, r);
    const Eigen::MatrixXd gram = detail::trial_gram(space);
    const std::vector<double> c = random_vector(rng, space.dim());
    const Solution v(space, c);
    const Eigen::Map<const Eigen::VectorXd> cv(c.data(), space.dim());
    const double expect = trial_seminorm(v) * trial_seminorm(v) +
                          trial_l2(v) * trial_l2(v);
    REQUIRE_THAT(cv.dot(gram * cv), WithinRel(expect, 1e-12));
  }
}

TEST_CASE("projection into the test space telescopes to zero") {
  std::mt19937 rng(14);
  const Mesh mesh = graded_mesh(0.0, 1.0, 6, 1.1);
  for (int r : {2, 3, 4}) {
    TrialSpace space(mesh, r);
    const DualPartition dual = build_dual(mesh, r, gauss_rule(r));
    const Solution v(space, random_vector(rng, space.dim()));
    const std::vector<double> w = project_to_test(v, dual);
    REQUIRE(static_cast<int>(w.size()) == dual.num_points() - 1);

    const int last = dual.num_points() - 1;
    const double closing =
        w.back() + dual.point_weight(last) *
                       v.deriv_ref(dual.element_of_point(last),
                                   dual.reference_node(last));
    REQUIRE_THAT(closing, WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("projection of a computed solution telescopes to zero") {
  const Problem prob = builtin("case1");
  const Mesh mesh = uniform_mesh(0.0, 1.0, 8);
  TrialSpace space(mesh, 4);
  const DualPartition dual = build_dual(mesh, 4, gauss_rule(4));
  const Solution sol = solve(assemble(prob, space, dual));
  const std::vector<double> w = project_to_test(sol, dual);

  const int last = dual.num_points() - 1;
  const double closing =
      w.back() + dual.point_weight(last) *
                     sol.deriv_ref(dual.element_of_point(last),
                                   dual.reference_node(last));
  REQUIRE_THAT(closing, WithinAbs(0.0, 1e-10));
}

TEST_CASE("projection rejects a mismatched dual partition") {
  const Mesh mesh = uniform_mesh(0.0, 1.0, 4);
  TrialSpace space(mesh, 3);
  const Solution v(space, std::vector<double>(space.dim(), 0.0));
  const DualPartition wrong_degree = build_dual(mesh, 2, gauss_rule(2));
  REQUIRE_THROWS_AS(project_to_test(v, wrong_degree), std::invalid_argument);
  const DualPartition wrong_mesh =
      build_dual(uniform_mesh(0.0, 1.0, 5), 3, gauss_rule(3));
  REQUIRE_THROWS_AS(project_to_test(v, wrong_mesh), std::invalid_argument);
}

TEST_CASE("test functions satisfy a refinement-stable Poincare bound") {
  std::mt19937 rng(42);
  for (int r : {2, 4}) {
    double coarse_fit = 0.0;
    for (int n : {4, 8, 16, 32}) {
      const Mesh mesh = uniform_mesh(0.0, 1.0, n);
      const DualPartition dual = build_dual(mesh, r, gauss_rule(r));
      double worst = 0.0;
      for (int trial = 0; trial < 200; ++trial) {
        const std::vector<double> w =
            random_vector(rng, dual.num_points() - 1);
        const TestNorms norms = test_norms(w, mesh, dual);
        const double ratio = norms.norm0 / norms.seminorm1;
        REQUIRE(ratio < 1.0);
        worst = std::max(worst, ratio);
      }
      if (n == 4)
        coarse_fit = worst;
      else
        REQUIRE(worst <= 1.05 * coarse_fit);
    }
  }
}

TEST_CASE("trial to test transfer preserves the seminorm up to constants") {
  std::mt19937 rng(7);
  for (int r : {2, 4}) {
    double lo_fit = 0.0, hi_fit = 0.0;
    for (int n : {4, 8, 16, 32}) {
      const Mesh mesh = uniform_mesh(0.0, 1.0, n);
      TrialSpace space(mesh, r);
      const DualPartition dual = build_dual(mesh, r, gauss_rule(r));
      double lo = 1e300, hi = 0.0;
      for (int trial = 0; trial < 50; ++trial) {
        const Solution v(space, random_vector(rng, space.dim()));
        const std::vector<double> w = project_to_test(v, dual);
        const double ratio =
            test_norms(w, mesh, dual).seminorm1 / trial_seminorm(v);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      REQUIRE(lo > 0.3);
      REQUIRE(hi < 1.0);
      if (n == 4) {
        lo_fit = lo;
        hi_fit = hi;
      } else {
        REQUIRE(lo >= 0.9 * lo_fit);
        REQUIRE(hi <= 1.1 * hi_fit);
      }
    }
  }
}

TEST_CASE("inf-sup estimate is positive for the plain laplacian") {
  Problem lap;
  lap.a = 0.0;
  lap.b = 1.0;
  lap.name = "laplace";
  lap.alpha = [](double) { return 1.0; };
  lap.alpha_deriv = [](double) { return 0.0; };
  lap.beta = [](double) { return 0.0; };
  lap.gamma = [](double) { return 0.0; };
  lap.alpha_min = 1.0;
  lap.source = [](double) { return 1.0; };
  const double sigma = infsup_estimate(lap, uniform_mesh(0.0, 1.0, 4), 1);
  REQUIRE(sigma > 0.5);
  REQUIRE(sigma < 1.5);
}

TEST_CASE("inf-sup estimate stays bounded away from zero under refinement") {
  const Problem prob = builtin("example1");

  SECTION("uniform meshes") {
    std::vector<double> sigma;
    for (int n : {4, 8, 16, 32})
      sigma.push_back(infsup_estimate(prob, uniform_mesh(0.0, 1.0, n), 4));
    for (double s : sigma) {
      REQUIRE(s >= 0.8 * sigma.back());
      REQUIRE(s > 1.0);
      REQUIRE(s < 2.5);
    }
  }

  SECTION("graded meshes") {
    std::vector<double> sigma;
    for (int n : {4, 8, 16, 32})
      sigma.push_back(infsup_estimate(prob, graded_mesh(0.0, 1.0, n, 1.2), 4));
    for (double s : sigma) {
      REQUIRE(s >= 0.8 * sigma.back());
      REQUIRE(s > 1.0);
      REQUIRE(s < 2.5);
    }
  }
}
