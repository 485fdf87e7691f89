#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fv1d/errors.hpp"

namespace fv1d {

enum class QuadFamily { gauss, lobatto };

/// Quadrature rule on the reference interval [-1, 1].
///
/// For the Gauss family `order` is the number of nodes (exact through
/// degree 2*order - 1); for the Lobatto family the rule has order + 1
/// nodes including both endpoints (exact through degree 2*order - 1).
struct QuadRule {
  QuadFamily family;
  int order;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, sum to 2
};

struct LegendreEval {
  double value;
  double derivative;
};

/// Value and derivative of the Legendre polynomial P_r at t.
///
/// Runs the three-term recurrence for the values jointly with
/// P'_n = P'_{n-2} + (2n-1) P_{n-1} for the derivatives, so both are
/// finite and exact at t = +-1 (P_r(1) = 1, P'_r(1) = r(r+1)/2).
inline LegendreEval legendre_eval(int r, double t) {
  if (r < 0) throw std::invalid_argument("legendre_eval: degree must be >= 0");
  double p_prev = 1.0, d_prev = 0.0;  // P_0
  if (r == 0) return {p_prev, d_prev};
  double p = t, d = 1.0;  // P_1
  for (int n = 2; n <= r; ++n) {
    const double p_next = ((2 * n - 1) * t * p - (n - 1) * p_prev) / n;
    const double d_next = d_prev + (2 * n - 1) * p;
    p_prev = p;
    d_prev = d;
    p = p_next;
    d = d_next;
  }
  return {p, d};
}

namespace detail {

inline constexpr int kMaxQuadOrder = 64;
inline constexpr double kNodeResidualTol = 1e-14;

// Newton iteration for a simple root.  Iterates until the step stagnates
// at machine resolution so the root is accurate to the last bit, polishes
// once, then verifies the residual sits at either the requested tolerance
// or the rounding floor for this function (about |f'| * eps at a
// representable root).  FDF returns {f(t), f'(t)}.
template <class FDF>
double newton_root(FDF&& fdf, double guess, const char* what) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double t = guess;
  for (int it = 0; it < 100; ++it) {
    const auto [f, df] = fdf(t);
    if (df == 0.0) break;
    const double step = f / df;
    t -= step;
    if (std::abs(step) <= 2.0 * eps * std::max(1.0, std::abs(t))) {
      const auto [f_polish, df_polish] = fdf(t);
      if (df_polish != 0.0) t -= f_polish / df_polish;
      const auto [f_final, df_final] = fdf(t);
      if (std::abs(f_final) <=
          std::max(kNodeResidualTol, 32.0 * eps * std::abs(df_final)))
        return t;
      break;
    }
  }
  throw NonConvergence(std::string(what) + ": Newton iteration did not converge");
}

}  // namespace detail

/// Gauss-Legendre rule with r nodes, the roots of P_r.
///
/// Roots come from Newton iterations started at the Chebyshev angles
/// cos(pi (j + 3/4) / (r + 1/2)); each root is computed once on the
/// positive half and mirrored, so the rule is symmetric bit for bit.
/// Weights are 2 / ((1 - t^2) P'_r(t)^2).
inline QuadRule gauss_rule(int r) {
  if (r < 1 || r > detail::kMaxQuadOrder)
    throw std::invalid_argument("gauss_rule: order must be in [1, 64]");
  std::vector<double> x(r), w(r);
  for (int j = 0; 2 * j < r; ++j) {
    double t;
    if (2 * j + 1 == r) {
      t = 0.0;  // middle root, exact for odd r
    } else {
      const double guess =
          std::cos(std::numbers::pi * (j + 0.75) / (r + 0.5));
      t = detail::newton_root(
          [r](double s) {
            const auto [p, dp] = legendre_eval(r, s);
            return std::pair{p, dp};
          },
          guess, "gauss_rule");
    }
    const auto [p, dp] = legendre_eval(r, t);
    const double weight = 2.0 / ((1.0 - t * t) * dp * dp);
    x[r - 1 - j] = t;
    w[r - 1 - j] = weight;
    x[j] = -t;
    w[j] = weight;
  }
  return {QuadFamily::gauss, r, std::move(x), std::move(w)};
}

/// Gauss-Lobatto rule with r + 1 nodes: +-1 plus the r - 1 roots of P'_r.
///
/// Interior roots come from Newton on P'_r (second derivative via the
/// Legendre equation (1 - t^2) P'' = 2 t P' - r(r+1) P) started at the
/// Chebyshev extrema cos(pi j / r), mirrored as in gauss_rule.
/// Weights are 2 / (r (r+1) P_r(t)^2).
inline QuadRule lobatto_rule(int r) {
  if (r < 1 || r > detail::kMaxQuadOrder)
    throw std::invalid_argument("lobatto_rule: order must be in [1, 64]");
  std::vector<double> x(r + 1), w(r + 1);
  const double scale = r * (r + 1.0);
  x[0] = -1.0;
  x[r] = 1.0;
  w[0] = w[r] = 2.0 / scale;  // P_r(+-1)^2 = 1
  for (int j = 1; 2 * j <= r; ++j) {
    double t;
    if (2 * j == r) {
      t = 0.0;  // middle extremum, exact for even r
    } else {
      const double guess = std::cos(std::numbers::pi * j / r);
      t = detail::newton_root(
          [r](double s) {
            const auto [p, dp] = legendre_eval(r, s);
            const double ddp = (2.0 * s * dp - r * (r + 1.0) * p) / (1.0 - s * s);
            return std::pair{dp, ddp};
          },
          guess, "lobatto_rule");
    }
    const auto [p, dp] = legendre_eval(r, t);
    (void)dp;
    const double weight = 2.0 / (scale * p * p);
    x[r - j] = t;
    w[r - j] = weight;
    x[j] = -t;
    w[j] = weight;
  }
  return {QuadFamily::lobatto, r, std::move(x), std::move(w)};
}

/// Integrate g over [a, b] split at the given interior breakpoints,
/// applying the mapped rule on each piece.  Breakpoints must be sorted
/// and strictly inside (a, b).
template <class F>
double composite_integrate(F&& g, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadRule& rule) {
  if (!(a < b)) throw InvalidInterval("composite_integrate: need a < b");
  double total = 0.0;
  auto add_piece = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      s += rule.weights[q] * g(mid + half * rule.nodes[q]);
    total += half * s;
  };
  double prev = a;
  for (double p : breakpoints) {
    if (!(p > prev && p < b))
      throw InvalidInterval(
          "composite_integrate: breakpoints must be sorted and interior");
    add_piece(prev, p);
    prev = p;
  }
  add_piece(prev, b);
  return total;
}

}  // namespace fv1d
