#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "hardtsp/metric.hpp"
#include "hardtsp/rng.hpp"
#include "hardtsp/tsp.hpp"

using namespace hardtsp;

namespace {

TspInstance random_metric_int(int n, Rng& rng, std::int64_t lo = 10, std::int64_t hi = 100) {
  // integer costs, metric by shortest-path closure of the rounded values
  std::vector<double> c(static_cast<std::size_t>(num_edges(n)));
  for (double& v : c) v = static_cast<double>(lo + rng.uniform_int(static_cast<int>(hi - lo)));
  TspInstance closed = metric_closure(TspInstance::fractional(n, c));
  std::vector<std::int64_t> ic;
  ic.reserve(c.size());
  for (int e = 0; e < closed.edge_count(); ++e) ic.push_back(std::llround(closed.cost(e)));
  return TspInstance::integer(n, std::move(ic));
}

TspInstance random_metric_frac(int n, Rng& rng) {
  std::vector<double> c(static_cast<std::size_t>(num_edges(n)));
  for (double& v : c) v = rng.uniform(0.1, 1.0);
  return metric_closure(TspInstance::fractional(n, c));
}

// All (n-1)!/2 tours by permutation enumeration; exact integer arithmetic.
std::int64_t brute_force_optimum(const TspInstance& inst) {
  const int n = inst.n();
  std::vector<int> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    if (perm.front() > perm.back()) continue;  // each cycle once
    std::int64_t total = inst.cost_i(0, perm.front()) + inst.cost_i(perm.back(), 0);
    for (std::size_t t = 0; t + 1 < perm.size(); ++t) total += inst.cost_i(perm[t], perm[t + 1]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TspInstance petersen_reduction() {
  // Petersen graph: outer C5, inner pentagram, spokes. No Hamiltonian cycle.
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                                         {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
                                         {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}};
  return hamiltonian_cycle_reduction(UndirectedGraph(10, edges), 0.1);
}

}  // namespace

TEST_CASE("held_karp_dp on hand-checked cases") {
  SUBCASE("unit metric n=7 and n=12") {
    CHECK(held_karp_dp(TspInstance::uniform(7, 1.0)).value == doctest::Approx(7.0));
    CHECK(held_karp_dp(TspInstance::uniform(12, 1.0)).value == doctest::Approx(12.0));
  }
  SUBCASE("K4 with the three tours enumerated by hand") {
    // costs c01=1 c02=2 c03=3 c12=4 c13=5 c23=6. Every K4 tour omits one
    // perfect matching, and all three matchings cost 7 here, so each of the
    // three tours costs 21 - 7 = 14.
    TspInstance inst = TspInstance::integer(4, {1, 2, 3, 4, 5, 6});
    TspResult res = held_karp_dp(inst);
    CHECK(res.value == doctest::Approx(14.0));
    CHECK(tour_cost_i(inst, res.tour) == 14);
  }
  SUBCASE("hard cap") {
    CHECK_THROWS(held_karp_dp(TspInstance::uniform(21, 1.0)));
  }
}

TEST_CASE("DP equals brute force on random integer metric instances") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 5 + trial % 5;  // 5..9
    TspInstance inst = random_metric_int(n, rng);
    TspResult dp = held_karp_dp(inst);
    CHECK(static_cast<std::int64_t>(dp.value) == brute_force_optimum(inst));
    CHECK(tour_cost_i(inst, dp.tour) == static_cast<std::int64_t>(dp.value));
  }
}

TEST_CASE("branch and bound agrees with DP") {
  Rng rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    TspInstance inst = random_metric_int(12, rng);
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;
    opts.seed = 5 + static_cast<std::uint64_t>(trial);
    TspResult bnb = solve_exact(inst, std::nullopt, opts);
    TspResult dp = held_karp_dp(inst);
    REQUIRE(bnb.proven_optimal);
    CHECK(bnb.value == doctest::Approx(dp.value));
  }
}

TEST_CASE("branch and bound agrees with DP on fractional instances") {
  Rng rng(19);
  for (int trial = 0; trial < 8; ++trial) {
    TspInstance inst = random_metric_frac(11, rng);
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;
    TspResult bnb = solve_exact(inst, std::nullopt, opts);
    TspResult dp = held_karp_dp(inst);
    REQUIRE(bnb.proven_optimal);
    CHECK(bnb.value == doctest::Approx(dp.value).epsilon(1e-9));
  }
}

TEST_CASE("one_tree_bound") {
  SUBCASE("unit metric n=6 with zero penalties") {
    CHECK(one_tree_bound(TspInstance::uniform(6, 1.0), std::vector<double>(6, 0.0)) ==
          doctest::Approx(6.0));
  }
  SUBCASE("always a lower bound on the DP optimum") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
      TspInstance inst = random_metric_frac(10, rng);
      std::vector<double> pi(10);
      for (double& v : pi) v = rng.uniform(-0.2, 0.2);
      const double bound = one_tree_bound(inst, pi);
      const double exact = held_karp_dp(inst).value;
      CHECK(bound <= exact + 1e-9);
    }
  }
}

TEST_CASE("heuristic_tour") {
  SUBCASE("unit metric value is n") {
    TspResult res = heuristic_tour(TspInstance::uniform(9, 1.0), 3, 1);
    CHECK(res.value == doctest::Approx(9.0));
  }
  SUBCASE("never below the exact optimum, close on random instances") {
    Rng rng(3);
    int within_5_percent = 0;
    for (int trial = 0; trial < 40; ++trial) {
      TspInstance inst = random_metric_frac(10, rng);
      TspResult heur = heuristic_tour(inst, 20, static_cast<std::uint64_t>(trial));
      const double exact = held_karp_dp(inst).value;
      CHECK(heur.value >= exact - 1e-9);
      if (heur.value <= 1.05 * exact) ++within_5_percent;
    }
    CHECK(within_5_percent >= 38);  // empirical rate, recorded
  }
  SUBCASE("result is 2-opt locally optimal") {
    Rng rng(13);
    TspInstance inst = random_metric_frac(12, rng);
    TspResult res = heuristic_tour(inst, 5, 2);
    const auto& ord = res.tour.order();
    const int n = 12;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        const int a = ord[static_cast<std::size_t>(i == 0 ? n - 1 : i - 1)];
        const int b = ord[static_cast<std::size_t>(i)];
        const int c = ord[static_cast<std::size_t>(j)];
        const int d = ord[static_cast<std::size_t>((j + 1) % n)];
        const double delta =
            inst.cost(a, c) + inst.cost(b, d) - inst.cost(a, b) - inst.cost(c, d);
        CHECK(delta >= -1e-9);
      }
    }
  }
}

TEST_CASE("cutoff semantics") {
  SUBCASE("early exit returns a verifiable tour") {
    Rng rng(21);
    TspInstance inst = random_metric_int(13, rng);
    const double opt = static_cast<double>(brute_force_optimum(random_metric_int(5, rng)));
    (void)opt;
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;
    TspResult full = solve_exact(inst, std::nullopt, opts);
    TspResult cut = solve_exact(inst, full.value + 50.0, opts);
    CHECK(cut.value < full.value + 50.0);
    CHECK(tour_cost_i(inst, cut.tour) == static_cast<std::int64_t>(cut.value));
  }
  SUBCASE("proves min >= cutoff when no tour is below") {
    Rng rng(22);
    TspInstance inst = random_metric_int(13, rng);
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;
    TspResult full = solve_exact(inst, std::nullopt, opts);
    TspResult cut = solve_exact(inst, full.value, opts);  // nothing strictly below the optimum
    CHECK(cut.proven_optimal);
    CHECK(cut.value >= full.value);
  }
  SUBCASE("infinite cutoff equals no cutoff") {
    Rng rng(23);
    TspInstance inst = random_metric_int(12, rng);
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;
    TspResult a = solve_exact(inst, std::nullopt, opts);
    TspResult b = solve_exact(inst, std::numeric_limits<double>::infinity(), opts);
    CHECK(a.value == doctest::Approx(b.value));
    CHECK(a.nodes_explored == b.nodes_explored);
  }
  SUBCASE("Petersen reduction has no tour below 1") {
    TspInstance inst = petersen_reduction();
    TspResult dp = held_karp_dp(inst);
    CHECK(dp.value >= 1.0);
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;
    TspResult bnb = solve_exact(inst, 1.0, opts);
    CHECK(bnb.proven_optimal);  // proof that the minimum is >= 1
    CHECK(bnb.value >= 1.0);
  }
}

TEST_CASE("node counts are deterministic for a fixed seed") {
  Rng rng(99);
  TspInstance inst = random_metric_int(14, rng);
  ExactOptions opts;
  opts.mode = ExactMode::kBranchAndBound;
  opts.seed = 1234;
  TspResult a = solve_exact(inst, std::nullopt, opts);
  TspResult b = solve_exact(inst, std::nullopt, opts);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.value == b.value);
}
