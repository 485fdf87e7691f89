#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fv1d/diagnostics.hpp"
#include "fv1d/fv1d.hpp"

namespace {

fv1d::Problem resolve_problem(const std::string& spec) {
  if (std::filesystem::exists(spec)) return fv1d::load_problem_file(spec);
  return fv1d::builtin(spec);
}

struct MeshSpec {
  fv1d::MeshFamily family = fv1d::MeshFamily::uniform;
  double ratio = 1.0;
};

MeshSpec parse_mesh_spec(const std::string& text) {
  if (text == "uniform") return {};
  const std::string prefix = "graded:";
  if (text.rfind(prefix, 0) == 0) {
    MeshSpec spec;
    spec.family = fv1d::MeshFamily::graded;
    try {
      std::size_t used = 0;
      spec.ratio = std::stod(text.substr(prefix.size()), &used);
      if (used != text.size() - prefix.size() || spec.ratio <= 0.0)
        throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--mesh", "expected uniform or graded:<ratio>");
    }
    return spec;
  }
  throw CLI::ValidationError("--mesh", "expected uniform or graded:<ratio>");
}

fv1d::Mesh make_mesh(const fv1d::Problem& prob, const MeshSpec& spec, int n) {
  return spec.family == fv1d::MeshFamily::uniform
             ? fv1d::uniform_mesh(prob.a, prob.b, n)
             : fv1d::graded_mesh(prob.a, prob.b, n, spec.ratio);
}

/// Writes to the given path, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fv1d::Error("cannot open output file: " + path);
  out << text;
}

int run_solve(const std::string& problem, int r, int n, const MeshSpec& mesh,
              int quad_order, const std::string& out) {
  const fv1d::Problem prob = resolve_problem(problem);
  const fv1d::Mesh grid = make_mesh(prob, mesh, n);
  fv1d::TrialSpace space(grid, r);
  const fv1d::DualPartition dual =
      fv1d::build_dual(grid, r, fv1d::gauss_rule(r));
  const fv1d::Solution sol =
      fv1d::solve(fv1d::assemble(prob, space, dual, quad_order));
  const fv1d::ErrorReport rep = fv1d::full_report(prob, space, dual, sol);

  char line[96];
  std::string text;
  std::snprintf(line, sizeof line, "problem: %s\nr: %d\nN: %d\nh: %.5e\n",
                prob.name.c_str(), r, n, grid.max_width());
  text += line;
  for (int f = 0; f < fv1d::ErrorReport::kFieldCount; ++f) {
    std::snprintf(line, sizeof line, "%s: %.5e\n",
                  fv1d::ErrorReport::kFieldNames[f], rep.field(f));
    text += line;
  }
  emit(out, text);
  return 0;
}

int run_study(const std::string& problem, int r, const std::vector<int>& ns,
              const MeshSpec& mesh, int quad_order, const std::string& out) {
  fv1d::StudyConfig cfg;
  cfg.problem = resolve_problem(problem);
  cfg.degrees = {r};
  cfg.refinements = ns;
  cfg.family = mesh.family;
  cfg.ratio = mesh.ratio;
  cfg.quad_order = quad_order;
  emit(out, fv1d::study_csv(fv1d::run_study(cfg)));
  return 0;
}

int run_golden(const std::vector<std::string>& paths) {
  bool all_ok = true;
  for (const std::string& path : paths) {
    const fv1d::GoldenReport report = fv1d::run_golden_table(path);
    std::printf("%s: %d/%d cells within tolerance", report.table.c_str(),
                report.passed, report.checked);
    if (report.excluded > 0)
      std::printf(" (%d marked cell%s excluded)", report.excluded,
                  report.excluded == 1 ? "" : "s");
    std::printf("\n");
    for (const fv1d::GoldenCell& cell : report.cells)
      if (!cell.pass && !cell.erratum) {
        std::printf("  FAIL %s r=%d N=%d %s: expected %.5e, computed %.5e "
                    "(rel %.2e)\n",
                    cell.problem.c_str(), cell.degree, cell.n,
                    cell.field.c_str(), cell.expected, cell.computed,
                    cell.rel_err);
        all_ok = false;
      }
  }
  return all_ok ? 0 : 1;
}

int run_recover(const std::string& problem, int r, int n, const MeshSpec& mesh,
                int quad_order, int grid_points, const std::string& out) {
  const fv1d::Problem prob = resolve_problem(problem);
  const fv1d::Mesh grid = make_mesh(prob, mesh, n);
  fv1d::TrialSpace space(grid, r);
  const fv1d::DualPartition dual =
      fv1d::build_dual(grid, r, fv1d::gauss_rule(r));
  const fv1d::Solution sol =
      fv1d::solve(fv1d::assemble(prob, space, dual, quad_order));
  const fv1d::RecoveredDerivative rec = fv1d::recover(sol, grid, dual);

  const bool have_exact = static_cast<bool>(prob.exact_deriv);
  std::string text = have_exact ? "x,recovered,exact,error\n" : "x,recovered\n";
  char line[128];
  for (int i = 0; i < grid_points; ++i) {
    const double x =
        prob.a + (prob.b - prob.a) * i / std::max(1, grid_points - 1);
    const double v = rec.value(x);
    if (have_exact) {
      const double exact = prob.exact_deriv(x);
      std::snprintf(line, sizeof line, "%.12e,%.12e,%.12e,%.5e\n", x, v, exact,
                    std::abs(exact - v));
    } else {
      std::snprintf(line, sizeof line, "%.12e,%.12e\n", x, v);
    }
    text += line;
  }
  emit(out, text);
  return 0;
}

int run_diag(const std::string& problem, int r, const std::vector<int>& ns,
             const MeshSpec& mesh) {
  const fv1d::Problem prob = resolve_problem(problem);
  for (int n : ns) {
    const double sigma = fv1d::infsup_estimate(prob, make_mesh(prob, mesh, n), r);
    std::printf("N=%d sigma=%.6f\n", n, sigma);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arbitrary-order finite volume method for 1D elliptic problems"};
  app.require_subcommand(1);

  std::string problem = "example1";
  std::string mesh_text = "uniform";
  std::string out_path;
  std::vector<int> ns;
  int r = 2;
  int quad_order = 0;
  int grid_points = 1001;

  auto add_common = [&](CLI::App* sub, bool n_list) {
    sub->add_option("--problem", problem,
                    "builtin problem name or problem file path");
    sub->add_option("--r", r, "trial polynomial degree")->check(
        CLI::PositiveNumber);
    auto* n_opt =
        sub->add_option("--n", ns, "element counts (comma separated)")
            ->delimiter(',')
            ->required();
    if (!n_list) n_opt->expected(1);
    sub->add_option("--mesh", mesh_text, "uniform or graded:<ratio>");
    sub->add_option("--quad-order", quad_order,
                    "assembly quadrature order override");
    return sub;
  };

  CLI::App* solve_cmd =
      add_common(app.add_subcommand("solve", "single run, print all error "
                                             "functionals"),
                 false);
  solve_cmd->add_option("--out", out_path, "write report to file");

  CLI::App* study_cmd = add_common(
      app.add_subcommand("study", "convergence sweep over N, emit CSV"), true);
  study_cmd->add_option("--out", out_path, "write CSV to file");

  CLI::App* golden_cmd = app.add_subcommand(
      "golden", "recompute the three reference tables and compare");
  std::vector<std::string> golden_paths = {"data/table1.txt", "data/table2.txt",
                                           "data/table3.txt"};
  golden_cmd->add_option("tables", golden_paths, "golden table files");

  CLI::App* recover_cmd = add_common(
      app.add_subcommand("recover", "emit recovered-derivative samples"),
      false);
  recover_cmd->add_option("--grid", grid_points, "sample count")
      ->check(CLI::Range(2, 100000000));
  recover_cmd->add_option("--out", out_path, "write samples to file");

  CLI::App* diag_cmd = add_common(
      app.add_subcommand("diag", "print inf-sup estimates per N"), true);

  CLI11_PARSE(app, argc, argv);

  try {
    const MeshSpec mesh = parse_mesh_spec(mesh_text);
    if (app.got_subcommand(solve_cmd))
      return run_solve(problem, r, ns.at(0), mesh, quad_order, out_path);
    if (app.got_subcommand(study_cmd))
      return run_study(problem, r, ns, mesh, quad_order, out_path);
    if (app.got_subcommand(golden_cmd)) return run_golden(golden_paths);
    if (app.got_subcommand(recover_cmd))
      return run_recover(problem, r, ns.at(0), mesh, quad_order, grid_points,
                         out_path);
    if (app.got_subcommand(diag_cmd))
      return run_diag(problem, r, ns, mesh);
  } catch (const CLI::Error& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
