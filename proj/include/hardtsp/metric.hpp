#pragma once

#include <vector>

#include "hardtsp/instance.hpp"

namespace hardtsp {

// One violated oriented triangle inequality: cost(i,j) > cost(i,k) + cost(j,k)
// by `violation`. (i,j) is the long edge, k the apex.
struct TriangleViolation {
  int i, j, k;
  double violation;
};

// All 3*C(n,3) oriented triangle checks; violations sorted by decreasing
// amount (ties by (i,j,k) lexicographically). Empty iff metric within tol.
std::vector<TriangleViolation> check_metric(const TspInstance& inst, double tol = 1e-9);

// All-pairs-shortest-path closure. Output is metric (tol 0), componentwise
// <= input, and idempotent.
TspInstance metric_closure(const TspInstance& inst);

struct ScaleRoundResult {
  TspInstance instance;                        // integer mode
  std::vector<TriangleViolation> metric_report;  // exact integer check
};

// round(factor * c_e) per edge; rounding may break metricity, so the exact
// metric report is attached and the caller decides whether to re-close.
ScaleRoundResult scale_and_round(const EdgeVector& costs, double factor,
                                 std::string name = "");

// Reduction from Hamiltonian-cycle testing: graph edges get cost
// (1 - eps/2)/n, non-edges (2 - eps)/n. The output is metric, and g has a
// Hamiltonian cycle iff the optimal tour costs < 1. Requires
// 0 < eps < 2/(n+1).
TspInstance hamiltonian_cycle_reduction(const UndirectedGraph& g, double eps);

}  // namespace hardtsp
