#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hardtsp/edge_index.hpp"
#include "hardtsp/instance.hpp"
#include "hardtsp/metric.hpp"
#include "hardtsp/rng.hpp"

using namespace hardtsp;

namespace {

TspInstance random_metric_instance(int n, Rng& rng, double lo = 0.1, double hi = 1.0) {
  // random costs closed under shortest paths
  std::vector<double> c(static_cast<std::size_t>(num_edges(n)));
  for (double& v : c) v = rng.uniform(lo, hi);
  return metric_closure(TspInstance::fractional(n, std::move(c)));
}

}  // namespace

TEST_CASE("edge_index matches the double loop") {
  for (int n : {3, 4, 7, 12}) {
    int e = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++e) {
        CHECK(edge_index(i, j, n) == e);
        CHECK(edge_index_u(j, i, n) == e);
        CHECK(edge_endpoints(e, n) == std::pair<int, int>{i, j});
      }
    }
    CHECK(e == num_edges(n));
  }
}

TEST_CASE("tour_cost basics") {
  SUBCASE("unit metric, n=4") {
    TspInstance inst = TspInstance::uniform(4, 1.0);
    CHECK(tour_cost(inst, Tour({0, 1, 2, 3})) == doctest::Approx(4.0));
    CHECK(tour_cost(inst, Tour({2, 0, 3, 1})) == doctest::Approx(4.0));
  }
  SUBCASE("single triangle") {
    TspInstance inst = TspInstance::fractional(3, {1.0, 2.0, 3.0});
    CHECK(tour_cost(inst, Tour({0, 1, 2})) == doctest::Approx(6.0));
  }
  SUBCASE("dimension mismatch") {
    TspInstance inst = TspInstance::uniform(4, 1.0);
    CHECK_THROWS(tour_cost(inst, Tour({0, 1, 2})));
  }
}

TEST_CASE("tour_cost is invariant under rotation and reversal") {
  Rng rng(7);
  TspInstance inst = random_metric_instance(8, rng);
  std::vector<int> order{3, 1, 7, 0, 5, 2, 6, 4};
  const double base = tour_cost(inst, Tour(order));
  for (int rot = 0; rot < 8; ++rot) {
    std::vector<int> r(order.begin(), order.end());
    std::rotate(r.begin(), r.begin() + rot, r.end());
    CHECK(tour_cost(inst, Tour(r)) == doctest::Approx(base));
    std::reverse(r.begin(), r.end());
    CHECK(tour_cost(inst, Tour(r)) == doctest::Approx(base));
  }
}

TEST_CASE("Tour validation and canonical form") {
  CHECK_THROWS(Tour({0, 1, 1}));
  CHECK_THROWS(Tour({0, 1, 5}));
  Tour t({2, 3, 0, 1});
  CHECK(t.canonical().order() == std::vector<int>{0, 1, 2, 3});
  CHECK(Tour({0, 3, 2, 1}) == Tour({0, 1, 2, 3}));  // reversal, same cycle
  EdgeVector z = t.incidence();
  int ones = 0;
  for (double v : z.values) ones += v == 1.0 ? 1 : 0;
  CHECK(ones == 4);
}

TEST_CASE("check_metric") {
  SUBCASE("unit costs are metric") {
    CHECK(check_metric(TspInstance::uniform(5, 1.0)).empty());
  }
  SUBCASE("single violated triple") {
    TspInstance inst = TspInstance::fractional(3, {5.0, 1.0, 1.0});  // c01=5, c02=1, c12=1
    auto viol = check_metric(inst, 0.0);
    REQUIRE(viol.size() == 1);
    CHECK(viol[0].i == 0);
    CHECK(viol[0].j == 1);
    CHECK(viol[0].k == 2);
    CHECK(viol[0].violation == doctest::Approx(3.0));
  }
  SUBCASE("near-violation below tolerance") {
    TspInstance inst = TspInstance::fractional(3, {2.0 + 1e-12, 1.0, 1.0});
    CHECK(check_metric(inst, 1e-9).empty());
    CHECK(check_metric(inst, 0.0).size() == 1);
  }
}

TEST_CASE("metric_closure") {
  SUBCASE("metric input unchanged") {
    Rng rng(3);
    TspInstance inst = random_metric_instance(6, rng);
    TspInstance closed = metric_closure(inst);
    for (int e = 0; e < inst.edge_count(); ++e) {
      CHECK(closed.cost(e) == doctest::Approx(inst.cost(e)));
    }
  }
  SUBCASE("shortcut through a cheap node") {
    TspInstance inst = TspInstance::fractional(3, {5.0, 1.0, 1.0});
    TspInstance closed = metric_closure(inst);
    CHECK(closed.cost(0, 1) == doctest::Approx(2.0));
    CHECK(check_metric(closed, 0.0).empty());
  }
  SUBCASE("matches a Bellman-Ford oracle on random costs, n=7") {
    Rng rng(11);
    const int n = 7;
    std::vector<double> costs(static_cast<std::size_t>(num_edges(n)));
    for (double& v : costs) v = rng.uniform(0.0, 2.0);
    TspInstance inst = TspInstance::fractional(n, costs);
    TspInstance closed = metric_closure(inst);

    // Bellman-Ford from every source over the complete graph
    for (int s = 0; s < n; ++s) {
      std::vector<double> dist(static_cast<std::size_t>(n), 1e18);
      dist[static_cast<std::size_t>(s)] = 0.0;
      for (int round = 0; round < n; ++round) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double cand = dist[static_cast<std::size_t>(i)] + inst.cost(i, j);
            if (cand < dist[static_cast<std::size_t>(j)]) dist[static_cast<std::size_t>(j)] = cand;
          }
        }
      }
      for (int v = 0; v < n; ++v) {
        if (v == s) continue;
        CHECK(closed.cost(s, v) == doctest::Approx(dist[static_cast<std::size_t>(v)]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("idempotent") {
    Rng rng(5);
    std::vector<double> costs(static_cast<std::size_t>(num_edges(6)));
    for (double& v : costs) v = rng.uniform(0.0, 3.0);
    TspInstance once = metric_closure(TspInstance::fractional(6, costs));
    TspInstance twice = metric_closure(once);
    for (int e = 0; e < once.edge_count(); ++e) CHECK(once.cost(e) == twice.cost(e));
  }
}

TEST_CASE("scale_and_round") {
  SUBCASE("clean scaling stays metric") {
    auto res = scale_and_round(EdgeVector(3, {0.5, 0.5, 0.5}), 1000.0);
    CHECK(res.instance.costs_i() == std::vector<std::int64_t>{500, 500, 500});
    CHECK(res.metric_report.empty());
  }
  SUBCASE("rounding to the metric boundary") {
    auto res = scale_and_round(EdgeVector(3, {0.2501, 0.2501, 0.5003}), 1000.0);
    CHECK(res.instance.costs_i() == std::vector<std::int64_t>{250, 250, 500});
    CHECK(res.metric_report.empty());  // 500 <= 250 + 250 holds with equality
  }
  SUBCASE("rounding can break metricity and the report says so") {
    auto res = scale_and_round(EdgeVector(3, {0.2,0.2,0.4004}), 10.0);
    // rounds to (2,2,4): metric; with factor 10/4.004 -> breaks
    CHECK(res.metric_report.empty());
    auto res2 = scale_and_round(EdgeVector(3, {0.24, 0.24, 0.52}), 10.0);
    // (2,2,5): 5 > 2+2 violated by 1
    REQUIRE(res2.metric_report.size() == 1);
    CHECK(res2.metric_report[0].violation == doctest::Approx(1.0));
  }
  SUBCASE("overflow refused") {
    CHECK_THROWS_AS(scale_and_round(EdgeVector(3, {1.0, 1.0, 1.0}), 1e17), std::overflow_error);
  }
}

TEST_CASE("hamiltonian_cycle_reduction") {
  SUBCASE("eps range enforced") {
    UndirectedGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK_THROWS(hamiltonian_cycle_reduction(c5, 0.0));
    CHECK_THROWS(hamiltonian_cycle_reduction(c5, 2.0 / 6.0));
  }
  SUBCASE("output is metric at tol 0") {
    UndirectedGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    TspInstance inst = hamiltonian_cycle_reduction(star, 0.1);
    CHECK(check_metric(inst, 0.0).empty());
  }
  SUBCASE("C5 cycle gives a tour below 1") {
    UndirectedGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    TspInstance inst = hamiltonian_cycle_reduction(c5, 0.1);
    CHECK(tour_cost(inst, Tour({0, 1, 2, 3, 4})) == doctest::Approx(0.95));
  }
}

TEST_CASE("integer and fractional instances never mix silently") {
  TspInstance f = TspInstance::uniform(4, 1.0);
  CHECK_THROWS_AS(f.costs_i(), std::logic_error);
  TspInstance i = TspInstance::integer(4, {1, 2, 3, 4, 5, 6});
  CHECK(i.cost_i(0, 1) == 1);
  CHECK(i.cost(0, 1) == 1.0);
  CHECK_THROWS(TspInstance::integer(4, {-1, 2, 3, 4, 5, 6}));
}
