#pragma once

#include <optional>
#include <vector>

#include "hardtsp/instance.hpp"
#include "hardtsp/lp.hpp"

namespace hardtsp {

// Optimal fractional point of the subtour relaxation: degree equalities,
// subtour cuts, 0-1 bounds. A basic solution of the final LP whose
// separation certificate shows no subset cut below 2.
struct SepSolution {
  EdgeVector x;
  double value = 0.0;      // SUBT(c)
  int n_cuts_added = 0;
  bool fractional = false;
  LpStatus lp_status = LpStatus::kOptimal;
};

struct SubtourCut {
  std::vector<int> subset;  // S, sorted, without node 0
  double cut_value = 0.0;
};

struct SepConfig {
  double cut_tol = 1e-7;      // violated when cut value < 2 - cut_tol
  double support_tol = 1e-9;  // support graph threshold
  double frac_tol = 1e-6;
  SimplexConfig lp;
  SimplexLimits limits;
};

// Exact separation over all subsets via a global minimum cut of the support
// graph. Returns the most violated subset cut, or nothing when every cut is
// at least 2 - cut_tol. Expects degree equalities to hold within tolerance.
std::optional<SubtourCut> separate_subtour(const EdgeVector& x, const SepConfig& cfg = {});

// true iff some entry is farther than tol from both 0 and 1.
bool is_fractional(const EdgeVector& x, double tol = 1e-6);

// Cutting-plane solve of the subtour relaxation. Requires n >= 3; for n <= 5
// the degree LP alone is already exact.
SepSolution solve_sep(const TspInstance& inst, const SepConfig& cfg = {});

}  // namespace hardtsp
