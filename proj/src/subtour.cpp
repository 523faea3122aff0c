#include "hardtsp/subtour.hpp"

#include <cmath>
#include <stdexcept>

#include "hardtsp/mincut.hpp"

namespace hardtsp {

namespace {

LpRow degree_row(int v, int n) {
  LpRow row;
  row.sense = RowSense::kEq;
  row.rhs = 2.0;
  row.idx.reserve(static_cast<std::size_t>(n - 1));
  for (int u = 0; u < n; ++u) {
    if (u == v) continue;
    row.idx.push_back(edge_index_u(u, v, n));
    row.val.push_back(1.0);
  }
  return row;
}

LpRow cut_row(const std::vector<int>& subset, int n) {
  LpRow row;
  row.sense = RowSense::kGe;
  row.rhs = 2.0;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int v : subset) in[static_cast<std::size_t>(v)] = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (in[static_cast<std::size_t>(i)] != in[static_cast<std::size_t>(j)]) {
        row.idx.push_back(edge_index(i, j, n));
        row.val.push_back(1.0);
      }
    }
  }
  return row;
}

}  // namespace

bool is_fractional(const EdgeVector& x, double tol) {
  for (double v : x.values) {
    if (v > tol && v < 1.0 - tol) return true;
  }
  return false;
}

std::optional<SubtourCut> separate_subtour(const EdgeVector& x, const SepConfig& cfg) {
  GlobalMinCut cut = global_min_cut(x, cfg.support_tol);
  if (cut.value >= 2.0 - cfg.cut_tol) return std::nullopt;
  return SubtourCut{cut.side, cut.value};
}

SepSolution solve_sep(const TspInstance& inst, const SepConfig& cfg) {
  const int n = inst.n();
  if (n < 3) throw std::invalid_argument("solve_sep: n must be >= 3");

  LinearProgram lp = LinearProgram::boxed(inst.edge_count(), 0.0, 1.0);
  lp.objective = inst.costs();
  lp.rows.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) lp.rows.push_back(degree_row(v, n));

  SimplexSolver solver(lp, cfg.lp);
  LpSolution sol = solver.solve(cfg.limits);

  SepSolution out;
  out.lp_status = sol.status;
  int cuts = 0;
  while (sol.status == LpStatus::kOptimal) {
    EdgeVector x(n, sol.x);
    auto cut = separate_subtour(x, cfg);
    if (!cut) break;
    solver.add_row(cut_row(cut->subset, n));
    ++cuts;
    sol = solver.resolve(cfg.limits);
    out.lp_status = sol.status;
  }

  if (sol.status != LpStatus::kOptimal)
    throw std::runtime_error(std::string("solve_sep: LP solve failed: ") + to_string(sol.status));

  out.x = EdgeVector(n, sol.x);
  out.value = sol.objective;
  out.n_cuts_added = cuts;
  out.fractional = is_fractional(out.x, cfg.frac_tol);
  return out;
}

}  // namespace hardtsp
