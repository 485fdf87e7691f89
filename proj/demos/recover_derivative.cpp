// Solves the pure diffusion problem, rebuilds the derivative from the
// computed Gauss-point values, and shows how fast the recovered
// derivative converges to the exact one in the sup norm.

#include <cstdio>

#include "fv1d/fv1d.hpp"

int main() {
  const fv1d::Problem prob = fv1d::builtin("case3");
  const int r = 3;

  std::printf("recovered-derivative sup error, problem %s, r=%d\n\n",
              prob.name.c_str(), r);
  std::printf("%6s %14s %8s\n", "N", "sup|u'-v|", "order");

  double prev = 0.0;
  for (int n : {4, 8, 16, 32}) {
    const fv1d::Mesh mesh = fv1d::uniform_mesh(prob.a, prob.b, n);
    fv1d::TrialSpace space(mesh, r);
    const fv1d::DualPartition dual =
        fv1d::build_dual(mesh, r, fv1d::gauss_rule(r));
    const fv1d::Solution sol =
        fv1d::solve(fv1d::assemble(prob, space, dual));
    const fv1d::RecoveredDerivative rec = fv1d::recover(sol, mesh, dual);
    const double sup =
        fv1d::recovered_sup_error(rec, prob.exact_deriv, 4001);

    std::printf("%6d %14.4e", n, sup);
    if (prev > 0.0) std::printf(" %8.2f", fv1d::observed_order(prev, sup));
    std::printf("\n");
    prev = sup;
  }
  return 0;
}
