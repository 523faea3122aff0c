#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hardtsp/instance.hpp"
#include "hardtsp/subtour.hpp"
#include "hardtsp/tsp.hpp"

namespace hardtsp {

// Oriented triangle row c_ij - c_ik - c_jk <= 0 with i < j and apex k.
struct TriangleRow {
  int i, j, k;
  auto operator<=>(const TriangleRow&) const = default;
};

enum class CutOrigin { kHeuristic, kExact, kWarm };

// Triangle and tour rows shared between the fractional and the integer
// hardening solves. Duplicates are rejected; tours are stored in canonical
// form and validated on insert.
class CutPool {
 public:
  bool add_triangle(TriangleRow row);               // false if already present
  bool add_tour(const Tour& tour, CutOrigin origin);

  const std::vector<TriangleRow>& triangles() const { return triangles_; }
  const std::vector<Tour>& tours() const { return tours_; }
  const std::vector<CutOrigin>& tour_origins() const { return origins_; }

 private:
  std::vector<TriangleRow> triangles_;
  std::set<TriangleRow> triangle_keys_;
  std::vector<Tour> tours_;
  std::vector<CutOrigin> origins_;
  std::set<std::vector<int>> tour_keys_;
};

enum class HardenStatus { kOptimal, kTimeLimit, kInfeasible };

const char* to_string(HardenStatus s);

// One record per separation round, the machine-readable run log.
struct SeparationRecord {
  std::string type;      // "triangle" | "tour_heuristic" | "tour_exact"
  double violation = 0;  // most violated amount (0 when nothing found)
  int rows_added = 0;
  double lp_objective = 0;
  std::int64_t node = 0;  // branch-and-cut node, 0 during the LP stage
};

struct HardeningStats {
  int triangle_rounds = 0;
  int triangle_rows = 0;
  int tour_rows_heuristic = 0;
  int tour_rows_exact = 0;
  double separation_time_triangle = 0;
  double separation_time_heuristic = 0;
  double separation_time_exact = 0;
  std::int64_t bnb_nodes = 0;
  int lp_iterations = 0;
  std::vector<SeparationRecord> log;
};

struct HardeningResult {
  EdgeVector costs;       // fractional or integer-valued
  TspInstance instance;   // same costs as a TspInstance (integer mode for the ILP)
  double objective = 0;   // xbar . costs
  double lower_bound = 0;
  double upper_bound = 0;
  HardenStatus status = HardenStatus::kTimeLimit;
  CutPool cuts;
  HardeningStats stats;
  bool box_bound_tight = false;  // some cost variable sits at the box bound
};

struct HardenConfig {
  int triangle_batch = 50;       // most-violated rows added per round
  double triangle_tol = 1e-7;
  double tour_tol = 1e-7;        // tour row satisfied when z.c >= delta - tol
  int heuristic_restarts = 10;
  std::uint64_t seed = 1;
  double time_limit_sec = std::numeric_limits<double>::infinity();
  std::int64_t max_bnb_nodes = std::numeric_limits<std::int64_t>::max();
  SimplexConfig lp;
  ExactOptions exact;  // separation TSP solver options
};

// The k most-violated oriented triangle rows of c, sorted by decreasing
// violation (ties lexicographic on (i,j,k)).
std::vector<TriangleRow> separate_triangles(const EdgeVector& c, int k, double tol = 1e-7);

struct TourSeparation {
  std::optional<Tour> tour;  // a tour with cost < delta, when one exists
  bool found_by_exact = false;   // heuristic missed it, the exact stage found it
  bool exact_certified = false;  // "no tour" is proven, not just unheard-of
  bool timed_out = false;
  double violation = 0.0;  // delta - cost of the returned tour
};

// Heuristic-first tour separation: restarts of local search, then the exact
// solver with the heuristic tour as warm start and `delta` as cutoff.
TourSeparation separate_tour(const EdgeVector& c, double delta, const HardenConfig& cfg = {});

// Fractional hardening: minimize xbar . c over the metric cone intersected
// with "every tour costs >= delta", by cutting planes with lazy triangle and
// tour separation. Box bound c_e <= delta keeps the LP bounded.
HardeningResult harden_fractional(const SepSolution& xbar, double delta = 1.0,
                                  const HardenConfig& cfg = {});

// Integer hardening: same constraint system with integer costs and tour
// right-hand side delta, solved by branch and cut. Fractional LP nodes get
// triangle separation only; integral candidates additionally get exact
// integer triangle checks and tour separation. `warm` seeds the initial row
// pool (see warm_pool).
HardeningResult harden_integer(const SepSolution& xbar, std::int64_t delta = 1000,
                               const HardenConfig& cfg = {}, const CutPool* warm = nullptr);

// Pool for the integer stage: every tour row from the fractional run plus
// all triangle rows with slack <= tau at its optimum.
CutPool warm_pool(const HardeningResult& hopt, double tau = 0.05);

}  // namespace hardtsp
