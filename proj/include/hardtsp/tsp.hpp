#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hardtsp/instance.hpp"

namespace hardtsp {

struct TspResult {
  Tour tour;
  double value = 0.0;
  bool proven_optimal = false;
  std::int64_t nodes_explored = 0;
  double runtime_sec = 0.0;
  bool hit_limit = false;  // node/time budget exhausted before a proof
};

struct SolveLimits {
  std::int64_t max_nodes = std::numeric_limits<std::int64_t>::max();
  double time_limit_sec = std::numeric_limits<double>::infinity();
};

enum class ExactMode { kAuto, kDp, kBranchAndBound };

struct ExactOptions {
  ExactMode mode = ExactMode::kAuto;
  int dp_threshold = 16;   // auto dispatch: DP at or below, branch and bound above
  std::uint64_t seed = 1;  // heuristic warm start stream
  int warm_restarts = 10;
  int root_ascent_iters = 30;
  int node_ascent_iters = 5;
  SolveLimits limits;
};

// Exact solve. Without a cutoff the result is a proven optimal tour. With a
// cutoff the solver either returns some tour cheaper than the cutoff
// (possibly without an optimality proof) or proves that no tour is below it
// (proven_optimal = true, best tour found attached). Integer instances are
// handled in exact integer arithmetic throughout.
TspResult solve_exact(const TspInstance& inst, std::optional<double> cutoff = std::nullopt,
                      const ExactOptions& opts = {});

// Held-Karp bitmask DP; hard cap n <= 20 (n * 2^n table).
TspResult held_karp_dp(const TspInstance& inst);

// Lagrangian 1-tree value for the given node penalties: minimum spanning
// tree over V \ {0} under costs c_ij + pi_i + pi_j, plus the two cheapest
// penalized edges at node 0, minus 2 * sum(pi). Always a lower bound on the
// optimal tour.
double one_tree_bound(const TspInstance& inst, const std::vector<double>& penalties);

// Nearest-neighbor construction plus 2-opt and Or-opt (segment lengths 1-3)
// to joint local optimality, best over `restarts` starts.
TspResult heuristic_tour(const TspInstance& inst, int restarts, std::uint64_t seed);

}  // namespace hardtsp
