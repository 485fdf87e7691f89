#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fv1d/errors.hpp"

namespace fv1d {

/// A two-point boundary value problem
///   -(alpha u')' + beta u' + gamma u = f   on (a, b),  u(a) = u(b) = 0,
/// with its coefficient functions, optional closed-form derivatives, and
/// declared coefficient bounds.  alpha_min must be a positive lower bound
/// for alpha; kappa a nonnegative lower bound for gamma - beta'/2.
struct Problem {
  std::string name;
  double a = 0.0;
  double b = 1.0;

  std::function<double(double)> alpha;
  std::function<double(double)> alpha_deriv;  // optional
  std::function<double(double)> beta;
  std::function<double(double)> beta_deriv;  // optional
  std::function<double(double)> gamma;
  std::function<double(double)> source;

  std::function<double(double)> exact;         // optional
  std::function<double(double)> exact_deriv;   // optional
  std::function<double(double)> exact_second;  // optional

  double alpha_min = 0.0;
  double kappa = 0.0;
};

/// Source term consistent with the declared exact solution:
/// f = -alpha' u' - alpha u'' + beta u' + gamma u.
inline std::function<double(double)> manufactured_source(const Problem& p) {
  if (!p.exact || !p.exact_deriv || !p.exact_second || !p.alpha_deriv)
    throw MissingDerivative(
        "manufactured_source: needs u, u', u'', and alpha' in closed form");
  return [alpha = p.alpha, dalpha = p.alpha_deriv, beta = p.beta,
          gamma = p.gamma, u = p.exact, du = p.exact_deriv,
          ddu = p.exact_second](double x) {
    return -dalpha(x) * du(x) - alpha(x) * ddu(x) + beta(x) * du(x) +
           gamma(x) * u(x);
  };
}

/// Verify the declared bounds on a sample grid: alpha stays at or above
/// alpha_min (> 0), and gamma - beta'/2 stays at or above kappa (>= 0)
/// whenever beta' is available.
inline void audit_coefficients(const Problem& p, int samples = 512) {
  if (!p.alpha || !p.beta || !p.gamma)
    throw std::invalid_argument("audit_coefficients: missing coefficient");
  if (!(p.alpha_min > 0.0))
    throw std::invalid_argument("audit_coefficients: alpha_min must be positive");
  if (p.kappa < 0.0)
    throw std::invalid_argument("audit_coefficients: kappa must be nonnegative");
  if (!(p.a < p.b))
    throw InvalidInterval("audit_coefficients: need a < b");
  for (int i = 0; i <= samples; ++i) {
    const double x = p.a + (p.b - p.a) * i / samples;
    if (p.alpha(x) < p.alpha_min - 1e-12)
      throw std::invalid_argument(
          "audit_coefficients: alpha drops below its declared bound");
    if (p.beta_deriv && p.gamma(x) - 0.5 * p.beta_deriv(x) < p.kappa - 1e-12)
      throw std::invalid_argument(
          "audit_coefficients: gamma - beta'/2 drops below its declared bound");
  }
}

namespace detail {

// Shared exact solution of the builtin problems on [0, 1]:
// u = sin(x) (x^12 - x^11), which vanishes at both endpoints.
inline double builtin_u(double x) {
  return std::sin(x) * (std::pow(x, 12) - std::pow(x, 11));
}

inline double builtin_du(double x) {
  const double p = std::pow(x, 12) - std::pow(x, 11);
  const double dp = 12.0 * std::pow(x, 11) - 11.0 * std::pow(x, 10);
  return std::cos(x) * p + std::sin(x) * dp;
}

inline double builtin_ddu(double x) {
  const double p = std::pow(x, 12) - std::pow(x, 11);
  const double dp = 12.0 * std::pow(x, 11) - 11.0 * std::pow(x, 10);
  const double ddp = 132.0 * std::pow(x, 10) - 110.0 * std::pow(x, 9);
  return -std::sin(x) * p + 2.0 * std::cos(x) * dp + std::sin(x) * ddp;
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  return {"example1", "case1", "case2", "case3"};
}

/// Builtin problems.  All share alpha = e^x and the exact solution
/// u = sin(x) (x^12 - x^11) on [0, 1]:
///   example1, case1:  beta = cos x, gamma = x
///   case2:            beta = 0,     gamma = x
///   case3:            beta = 0,     gamma = 0
inline Problem builtin(const std::string& name) {
  Problem p;
  p.name = name;
  p.a = 0.0;
  p.b = 1.0;
  p.alpha = [](double x) { return std::exp(x); };
  p.alpha_deriv = [](double x) { return std::exp(x); };
  p.alpha_min = 1.0;
  p.kappa = 0.0;
  p.exact = detail::builtin_u;
  p.exact_deriv = detail::builtin_du;
  p.exact_second = detail::builtin_ddu;

  if (name == "example1" || name == "case1") {
    p.beta = [](double x) { return std::cos(x); };
    p.beta_deriv = [](double x) { return -std::sin(x); };
    p.gamma = [](double x) { return x; };
  } else if (name == "case2") {
    p.beta = [](double) { return 0.0; };
    p.beta_deriv = [](double) { return 0.0; };
    p.gamma = [](double x) { return x; };
  } else if (name == "case3") {
    p.beta = [](double) { return 0.0; };
    p.beta_deriv = [](double) { return 0.0; };
    p.gamma = [](double) { return 0.0; };
  } else {
    throw UnknownProblem("builtin: no problem named '" + name + "'");
  }

  p.source = manufactured_source(p);
  return p;
}

}  // namespace fv1d
