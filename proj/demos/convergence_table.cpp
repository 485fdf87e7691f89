// Sweeps the first builtin problem over several degrees and mesh sizes
// and prints the averaged derivative error with its observed orders.

#include <cstdio>

#include "fv1d/fv1d.hpp"

int main() {
  std::printf("aver1 error, problem case1, uniform meshes\n\n");
  std::printf("%4s %6s %12s %8s\n", "r", "N", "aver1", "order");

  for (int r = 2; r <= 5; ++r) {
    fv1d::StudyConfig cfg;
    cfg.problem = fv1d::builtin("case1");
    cfg.degrees = {r};
    cfg.refinements = {2, 4, 8, 16, 32};
    const fv1d::StudyResult result = fv1d::run_study(cfg);

    for (std::size_t i = 0; i < result.runs.size(); ++i) {
      const fv1d::StudyRun& run = result.runs[i];
      std::printf("%4d %6d %12.4e", run.degree, run.n, run.report.aver1);
      if (i > 0) {
        const double prev = result.runs[i - 1].report.aver1;
        if (prev > fv1d::kRateFloor && run.report.aver1 > fv1d::kRateFloor)
          std::printf(" %8.2f", fv1d::observed_order(prev, run.report.aver1));
      }
      std::printf("\n");
    }
    std::printf("\n");
  }
  return 0;
}
