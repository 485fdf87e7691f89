#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fv1d/assembly.hpp"
#include "fv1d/errors.hpp"
#include "fv1d/norms.hpp"
#include "fv1d/problems.hpp"

namespace fv1d {

enum class MeshFamily { uniform, graded };

/// One convergence sweep: every degree in `degrees` crossed with every
/// element count in `refinements`.  `quad_order` overrides the assembly
/// quadrature; error functionals keep their own over-integration.
struct StudyConfig {
  Problem problem;
  std::vector<int> degrees;
  std::vector<int> refinements;
  MeshFamily family = MeshFamily::uniform;
  double ratio = 1.0;
  int quad_order = 0;
};

struct StudyRun {
  int degree = 0;
  int n = 0;
  double h = 0.0;  // largest element width
  ErrorReport report;
  double seconds = 0.0;
};

/// Observed orders between a consecutive mesh pair (n_fine = 2 n_coarse)
/// of one degree.  Entries are NaN when either error sits at or below
/// the 1e-14 floating-point floor, where rates stop meaning anything.
struct StudyOrders {
  int degree = 0;
  int n_coarse = 0;
  int n_fine = 0;
  std::array<double, ErrorReport::kFieldCount> order{};

  bool defined(int field) const { return std::isfinite(order.at(field)); }
};

struct StudyResult {
  std::vector<StudyRun> runs;       // ordered by (degree, n)
  std::vector<StudyOrders> orders;  // consecutive doubling pairs per degree
};

/// Floor below which the reference tables stop printing values ("---").
inline constexpr double kRateFloor = 1e-14;

/// Convergence order from one halving of the mesh.
inline double observed_order(double e_coarse, double e_fine) {
  if (e_coarse <= 0.0 || e_fine <= 0.0)
    throw DegenerateError("observed_order: errors must be positive");
  return std::log2(e_coarse / e_fine);
}

inline StudyResult run_study(const StudyConfig& cfg) {
  if (cfg.degrees.empty())
    throw std::invalid_argument("run_study: no degrees given");
  for (int r : cfg.degrees)
    if (r < 1) throw std::invalid_argument("run_study: degree must be >= 1");
  if (cfg.refinements.empty())
    throw std::invalid_argument("run_study: no refinements given");
  for (std::size_t i = 0; i < cfg.refinements.size(); ++i) {
    if (cfg.refinements[i] < 1)
      throw std::invalid_argument("run_study: element counts must be >= 1");
    if (i > 0 && cfg.refinements[i] <= cfg.refinements[i - 1])
      throw std::invalid_argument(
          "run_study: element counts must be strictly increasing");
  }
  if (cfg.family == MeshFamily::graded && cfg.ratio <= 0.0)
    throw std::invalid_argument("run_study: graded ratio must be positive");

  StudyResult result;
  for (int r : cfg.degrees) {
    for (int n : cfg.refinements) {
      try {
        const Mesh mesh = cfg.family == MeshFamily::uniform
                              ? uniform_mesh(cfg.problem.a, cfg.problem.b, n)
                              : graded_mesh(cfg.problem.a, cfg.problem.b, n,
                                            cfg.ratio);
        TrialSpace space(mesh, r);
        const DualPartition dual = build_dual(mesh, r, gauss_rule(r));

        const auto t0 = std::chrono::steady_clock::now();
        FvmSystem sys = assemble(cfg.problem, space, dual, cfg.quad_order);
        const Solution sol = solve(sys);
        const ErrorReport rep = full_report(cfg.problem, space, dual, sol);
        const auto t1 = std::chrono::steady_clock::now();

        StudyRun run;
        run.degree = r;
        run.n = n;
        run.h = 0.0;
        for (int e = 0; e < mesh.num_elements(); ++e)
          run.h = std::max(run.h, mesh.width(e));
        run.report = rep;
        run.seconds = std::chrono::duration<double>(t1 - t0).count();
        result.runs.push_back(run);
      } catch (const std::exception& err) {
        throw Error("run_study (r=" + std::to_string(r) +
                    ", N=" + std::to_string(n) + "): " + err.what());
      }
    }

    const std::size_t m = cfg.refinements.size();
    const std::size_t base = result.runs.size() - m;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const StudyRun& coarse = result.runs[base + i];
      const StudyRun& fine = result.runs[base + i + 1];
      if (fine.n != 2 * coarse.n) continue;
      StudyOrders ord;
      ord.degree = r;
      ord.n_coarse = coarse.n;
      ord.n_fine = fine.n;
      for (int f = 0; f < ErrorReport::kFieldCount; ++f) {
        const double ec = coarse.report.field(f);
        const double ef = fine.report.field(f);
        ord.order.at(f) = (ec > kRateFloor && ef > kRateFloor)
                              ? observed_order(ec, ef)
                              : std::numeric_limits<double>::quiet_NaN();
      }
      result.orders.push_back(ord);
    }
  }
  return result;
}

/// Renders a study as CSV.  One data row per run; after the data, one
/// `order:` row per consecutive doubling pair, with blanks where the
/// rate floor suppressed the order.  Output is bit-identical across
/// runs of the same configuration.
inline std::string study_csv(const StudyResult& result) {
  std::string out =
      "r,N,h,l2,h1,h1_semi,interp_h1,g1,aver1,l0_lobatto,aver0,e_node,"
      "sup_gauss_deriv\n";
  char buf[64];
  for (const StudyRun& run : result.runs) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.5e", run.degree, run.n, run.h);
    out += buf;
    for (int f = 0; f < ErrorReport::kFieldCount; ++f) {
      std::snprintf(buf, sizeof buf, ",%.5e", run.report.field(f));
      out += buf;
    }
    out += '\n';
  }
  for (const StudyOrders& ord : result.orders) {
    std::snprintf(buf, sizeof buf, "%d,order:%d,", ord.degree, ord.n_fine);
    out += buf;
    for (int f = 0; f < ErrorReport::kFieldCount; ++f) {
      out += ',';
      if (ord.defined(f)) {
        std::snprintf(buf, sizeof buf, "%.4f", ord.order.at(f));
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

/// One reference error table: per-table tolerances and one block per
/// (problem, degree) with named report columns.
struct GoldenTable {
  struct Row {
    int n = 0;
    std::vector<std::string> cells;  // "---" skip, "!" prefix = erratum
  };
  struct Block {
    std::string problem;
    int degree = 0;
    std::vector<std::string> fields;
    std::vector<Row> rows;
  };

  std::string name;
  double tol_rel = 0.0;
  double floor_abs = 0.0;
  std::vector<Block> blocks;
};

namespace detail {

inline int report_field_index(std::string_view name) {
  for (int f = 0; f < ErrorReport::kFieldCount; ++f)
    if (ErrorReport::kFieldNames[f] == name) return f;
  return -1;
}

inline double parse_golden_number(const std::string& token,
                                  const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw FormatError("golden table: bad number '" + token + "' " + where);
  }
}

}  // namespace detail

inline GoldenTable parse_golden_table(std::istream& in,
                                      const std::string& origin) {
  GoldenTable table;
  bool have_tol = false, have_floor = false;
  std::string line;
  std::size_t lineno = 0;

  auto fail = [&](const std::string& what) -> void {
    throw FormatError("golden table " + origin + " line " +
                      std::to_string(lineno) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream words(line);
    std::string word;
    if (!(words >> word)) continue;

    if (word == "table") {
      if (!(words >> table.name)) fail("table needs a name");
    } else if (word == "tol_rel") {
      std::string v;
      if (!(words >> v)) fail("tol_rel needs a value");
      table.tol_rel = detail::parse_golden_number(v, "for tol_rel");
      have_tol = true;
    } else if (word == "floor_abs") {
      std::string v;
      if (!(words >> v)) fail("floor_abs needs a value");
      table.floor_abs = detail::parse_golden_number(v, "for floor_abs");
      have_floor = true;
    } else if (word == "block") {
      GoldenTable::Block block;
      std::string attr;
      while (words >> attr) {
        const auto eq = attr.find('=');
        if (eq == std::string::npos) fail("block attribute needs '='");
        const std::string key = attr.substr(0, eq);
        const std::string value = attr.substr(eq + 1);
        if (key == "problem") {
          block.problem = value;
        } else if (key == "r") {
          block.degree = static_cast<int>(
              detail::parse_golden_number(value, "for block r"));
        } else {
          fail("unknown block attribute '" + key + "'");
        }
      }
      if (block.problem.empty() || block.degree < 1)
        fail("block needs problem= and r=");
      table.blocks.push_back(std::move(block));
    } else if (word == "columns") {
      if (table.blocks.empty()) fail("columns before any block");
      auto& block = table.blocks.back();
      if (!block.fields.empty()) fail("duplicate columns line");
      while (words >> word) {
        if (detail::report_field_index(word) < 0)
          fail("unknown report field '" + word + "'");
        block.fields.push_back(word);
      }
      if (block.fields.empty()) fail("columns line is empty");
    } else {
      if (table.blocks.empty() || table.blocks.back().fields.empty())
        fail("data row before block/columns");
      auto& block = table.blocks.back();
      GoldenTable::Row row;
      row.n = static_cast<int>(detail::parse_golden_number(word, "for N"));
      if (row.n < 1) fail("N must be >= 1");
      while (words >> word) {
        if (word != "---") {
          const std::string body = word.front() == '!' ? word.substr(1) : word;
          detail::parse_golden_number(body,
                                      "at line " + std::to_string(lineno));
        }
        row.cells.push_back(word);
      }
      if (row.cells.size() != block.fields.size())
        fail("expected " + std::to_string(block.fields.size()) +
             " cells, got " + std::to_string(row.cells.size()));
      block.rows.push_back(std::move(row));
    }
  }

  if (table.name.empty()) throw FormatError("golden table " + origin +
                                            ": missing table line");
  if (!have_tol || !have_floor)
    throw FormatError("golden table " + origin +
                      ": missing tol_rel or floor_abs");
  if (table.blocks.empty())
    throw FormatError("golden table " + origin + ": no blocks");
  for (const auto& block : table.blocks)
    if (block.rows.empty())
      throw FormatError("golden table " + origin + ": block without rows");
  return table;
}

inline GoldenTable load_golden_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open golden table: " + path);
  return parse_golden_table(in, path);
}

struct GoldenCell {
  std::string problem;
  int degree = 0;
  int n = 0;
  std::string field;
  double expected = 0.0;
  double computed = 0.0;
  double rel_err = 0.0;
  double abs_err = 0.0;
  bool erratum = false;  // reported but excluded from pass/fail
  bool pass = false;
};

struct GoldenReport {
  std::string table;
  std::vector<GoldenCell> cells;
  int checked = 0;
  int passed = 0;
  int excluded = 0;

  bool ok() const { return checked == passed; }
};

/// Compares one study against one golden block.  The study must contain
/// a run for the block's degree and every row's N.
inline void golden_check(const StudyResult& result, const GoldenTable& table,
                         const GoldenTable::Block& block,
                         GoldenReport& report) {
  for (const auto& row : block.rows) {
    const StudyRun* run = nullptr;
    for (const StudyRun& candidate : result.runs)
      if (candidate.degree == block.degree && candidate.n == row.n) {
        run = &candidate;
        break;
      }
    if (!run)
      throw FormatError("golden table " + table.name + ": no run for r=" +
                        std::to_string(block.degree) +
                        ", N=" + std::to_string(row.n));
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      std::string token = row.cells[c];
      if (token == "---") continue;
      GoldenCell cell;
      cell.problem = block.problem;
      cell.degree = block.degree;
      cell.n = row.n;
      cell.field = block.fields[c];
      if (token.front() == '!') {
        cell.erratum = true;
        token.erase(0, 1);
      }
      cell.expected = detail::parse_golden_number(
          token, "in block " + block.problem + " N=" + std::to_string(row.n));
      cell.computed =
          run->report.field(detail::report_field_index(block.fields[c]));
      cell.abs_err = std::abs(cell.computed - cell.expected);
      cell.rel_err = cell.abs_err / std::abs(cell.expected);
      cell.pass = cell.rel_err <= table.tol_rel ||
                  cell.abs_err <= table.floor_abs;
      if (cell.erratum) {
        ++report.excluded;
      } else {
        ++report.checked;
        if (cell.pass) ++report.passed;
      }
      report.cells.push_back(std::move(cell));
    }
  }
}

/// Runs every block of a golden table file against freshly computed
/// solutions on uniform meshes and reports the per-cell comparison.
inline GoldenReport run_golden_table(const std::string& path) {
  const GoldenTable table = load_golden_table(path);
  GoldenReport report;
  report.table = table.name;
  for (const auto& block : table.blocks) {
    StudyConfig cfg;
    cfg.problem = builtin(block.problem);
    cfg.degrees = {block.degree};
    for (const auto& row : block.rows) cfg.refinements.push_back(row.n);
    const StudyResult result = run_study(cfg);
    golden_check(result, table, block, report);
  }
  return report;
}

}  // namespace fv1d
