#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fv1d/problems.hpp"

using namespace fv1d;
using Catch::Matchers::WithinAbs;

TEST_CASE("builtin registry knows its problems", "[problems]") {
  const auto names = builtin_names();
  REQUIRE(names.size() == 4);
  for (const auto& name : names) {
    const Problem p = builtin(name);
    REQUIRE(p.name == name);
    REQUIRE(p.a == 0.0);
    REQUIRE(p.b == 1.0);
    REQUIRE_NOTHROW(audit_coefficients(p));
  }
  REQUIRE_THROWS_AS(builtin("case4"), UnknownProblem);
  REQUIRE_THROWS_AS(builtin(""), UnknownProblem);
}

TEST_CASE("declared derivatives match central differences", "[problems]") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> pick(0.02, 0.98);
  const double h = 1e-5;
  for (const auto& name : builtin_names()) {
    const Problem p = builtin(name);
    for (int i = 0; i < 100; ++i) {
      const double x = pick(rng);
      const double fd_du = (p.exact(x + h) - p.exact(x - h)) / (2 * h);
      REQUIRE_THAT(p.exact_deriv(x),
                   WithinAbs(fd_du, 1e-6 * std::max(1.0, std::abs(fd_du))));
      const double fd_ddu = (p.exact_deriv(x + h) - p.exact_deriv(x - h)) / (2 * h);
      REQUIRE_THAT(p.exact_second(x),
                   WithinAbs(fd_ddu, 1e-6 * std::max(1.0, std::abs(fd_ddu))));
      const double fd_dalpha = (p.alpha(x + h) - p.alpha(x - h)) / (2 * h);
      REQUIRE_THAT(p.alpha_deriv(x),
                   WithinAbs(fd_dalpha, 1e-6 * std::max(1.0, std::abs(fd_dalpha))));
      const double fd_dbeta = (p.beta(x + h) - p.beta(x - h)) / (2 * h);
      REQUIRE_THAT(p.beta_deriv(x),
                   WithinAbs(fd_dbeta, 1e-6 * std::max(1.0, std::abs(fd_dbeta))));
    }
  }
}

TEST_CASE("manufactured source closes the equation", "[problems]") {
  // check -(alpha u')' + beta u' + gamma u = f with the flux derivative
  // taken by central differences, an independent path
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pick(0.05, 0.95);
  const double h = 1e-5;
  for (const auto& name : builtin_names()) {
    const Problem p = builtin(name);
    for (int i = 0; i < 60; ++i) {
      const double x = pick(rng);
      auto flux = [&](double y) { return p.alpha(y) * p.exact_deriv(y); };
      const double dflux = (flux(x + h) - flux(x - h)) / (2 * h);
      const double lhs = -dflux + p.beta(x) * p.exact_deriv(x) +
                         p.gamma(x) * p.exact(x);
      REQUIRE_THAT(p.source(x),
                   WithinAbs(lhs, 1e-5 * std::max(1.0, std::abs(lhs))));
    }
  }
}

TEST_CASE("solution vanishes at the boundary", "[problems]") {
  const Problem p = builtin("case1");
  REQUIRE(p.exact(0.0) == 0.0);
  REQUIRE_THAT(p.exact(1.0), WithinAbs(0.0, 1e-16));
}

TEST_CASE("example1 and case1 are the same problem", "[problems]") {
  const Problem a = builtin("example1");
  const Problem b = builtin("case1");
  for (double x : {0.1, 0.37, 0.62, 0.95}) {
    REQUIRE(a.alpha(x) == b.alpha(x));
    REQUIRE(a.beta(x) == b.beta(x));
    REQUIRE(a.gamma(x) == b.gamma(x));
    REQUIRE(a.source(x) == b.source(x));
  }
}

TEST_CASE("case2 and case3 drop terms as advertised", "[problems]") {
  const Problem c2 = builtin("case2");
  const Problem c3 = builtin("case3");
  for (double x : {0.0, 0.33, 0.71, 1.0}) {
    REQUIRE(c2.beta(x) == 0.0);
    REQUIRE(c2.gamma(x) == x);
    REQUIRE(c3.beta(x) == 0.0);
    REQUIRE(c3.gamma(x) == 0.0);
  }
}

TEST_CASE("coefficient audit enforces the declared bounds", "[problems]") {
  Problem p = builtin("case1");

  SECTION("alpha_min must be positive") {
    p.alpha_min = 0.0;
    REQUIRE_THROWS_AS(audit_coefficients(p), std::invalid_argument);
    p.alpha_min = -1.0;
    REQUIRE_THROWS_AS(audit_coefficients(p), std::invalid_argument);
  }

  SECTION("kappa must be nonnegative") {
    p.kappa = -0.5;
    REQUIRE_THROWS_AS(audit_coefficients(p), std::invalid_argument);
  }

  SECTION("alpha below its declared bound is caught") {
    p.alpha = [](double x) { return 0.5 + x; };
    p.alpha_min = 1.0;
    REQUIRE_THROWS_AS(audit_coefficients(p), std::invalid_argument);
  }

  SECTION("gamma - beta'/2 below its declared bound is caught") {
    p.kappa = 0.5;  // case1 has min(gamma - beta'/2) = 0 at x = 0
    REQUIRE_THROWS_AS(audit_coefficients(p), std::invalid_argument);
  }

  SECTION("missing coefficients are caught") {
    p.gamma = nullptr;
    REQUIRE_THROWS_AS(audit_coefficients(p), std::invalid_argument);
  }
}

TEST_CASE("manufactured_source demands the closed forms", "[problems]") {
  Problem p = builtin("case1");
  p.exact_second = nullptr;
  REQUIRE_THROWS_AS(manufactured_source(p), MissingDerivative);
  p = builtin("case1");
  p.alpha_deriv = nullptr;
  REQUIRE_THROWS_AS(manufactured_source(p), MissingDerivative);
}
