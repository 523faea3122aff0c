#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "hardtsp/harden.hpp"
#include "hardtsp/metric.hpp"
#include "hardtsp/pipeline.hpp"
#include "hardtsp/rng.hpp"

using namespace hardtsp;

namespace {

std::vector<Tour> all_tours(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Tour> out;
  do {
    if (perm.front() > perm.back()) continue;
    std::vector<int> order{0};
    order.insert(order.end(), perm.begin(), perm.end());
    out.push_back(Tour(order));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Hardening LP with the complete row system, the oracle for the lazy loop.
double full_hardening_lp(const SepSolution& xbar, double delta) {
  const int n = xbar.x.n;
  LinearProgram lp = LinearProgram::boxed(num_edges(n), 0.0, delta);
  lp.objective = xbar.x.values;
  for (double& v : lp.objective) v = std::max(v, 0.0);
  for (const Tour& t : all_tours(n)) {
    LpRow row;
    row.sense = RowSense::kGe;
    row.rhs = delta;
    for (auto [i, j] : t.edges()) {
      row.idx.push_back(edge_index(i, j, n));
      row.val.push_back(1.0);
    }
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        LpRow row;
        row.sense = RowSense::kLe;
        row.rhs = 0.0;
        row.idx = {edge_index(i, j, n), edge_index_u(i, k, n), edge_index_u(j, k, n)};
        row.val = {1.0, -1.0, -1.0};
        lp.rows.push_back(std::move(row));
      }
    }
  }
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  return sol.objective;
}

SepSolution tour_vertex(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Tour t(order);
  return SepSolution{t.incidence(), static_cast<double>(n), 0, false, LpStatus::kOptimal};
}

}  // namespace

TEST_CASE("separate_triangles") {
  SUBCASE("metric vector yields nothing") {
    TspInstance unit = TspInstance::uniform(6, 1.0);
    CHECK(separate_triangles(unit.cost_vector(), 10).empty());
  }
  SUBCASE("single violated triple is found") {
    EdgeVector c(3, {5.0, 1.0, 1.0});
    auto rows = separate_triangles(c, 10, 1e-9);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == TriangleRow{0, 1, 2});
  }
  SUBCASE("top-k matches the full scan with deterministic ties") {
    Rng rng(8);
    const int n = 8;
    EdgeVector c(n);
    for (double& v : c.values) v = rng.uniform(0.0, 1.0);
    auto top5 = separate_triangles(c, 5, 1e-7);
    auto all = separate_triangles(c, 1 << 20, 1e-7);
    REQUIRE(all.size() >= top5.size());
    for (std::size_t t = 0; t < top5.size(); ++t) CHECK(top5[t] == all[t]);
    for (std::size_t t = 0; t + 1 < all.size(); ++t) {
      const auto viol = [&](const TriangleRow& r) {
        return c.at(r.i, r.j) - c.at(r.i, r.k) - c.at(r.j, r.k);
      };
      CHECK(viol(all[t]) >= viol(all[t + 1]) - 1e-12);
    }
  }
}

TEST_CASE("separate_tour") {
  const int n = 6;
  SUBCASE("uniform delta/n costs have no violating tour") {
    EdgeVector c(n, 1.0 / n);
    TourSeparation ts = separate_tour(c, 1.0);
    CHECK_FALSE(ts.tour.has_value());
    CHECK(ts.exact_certified);
  }
  SUBCASE("a free tour is found") {
    EdgeVector c(n, 1.0 / n);
    Tour cheap({0, 2, 4, 1, 5, 3});
    for (auto [i, j] : cheap.edges()) c.at(i, j) = 0.0;
    TourSeparation ts = separate_tour(c, 1.0);
    REQUIRE(ts.tour.has_value());
    CHECK(tour_cost(TspInstance::fractional(n, c.values), *ts.tour) < 1.0 - 1e-7);
  }
  SUBCASE("decision matches tour enumeration on random vectors") {
    Rng rng(9);
    for (int trial = 0; trial < 6; ++trial) {
      EdgeVector c(n);
      for (double& v : c.values) v = rng.uniform(0.05, 0.35);
      double best = 1e18;
      TspInstance inst = TspInstance::fractional(n, c.values);
      for (const Tour& t : all_tours(n)) best = std::min(best, tour_cost(inst, t));
      TourSeparation ts = separate_tour(c, 1.0);
      if (best < 1.0 - 1e-7) {
        REQUIRE(ts.tour.has_value());
      } else {
        CHECK_FALSE(ts.tour.has_value());
      }
    }
  }
}

TEST_CASE("cut pool rejects duplicates and canonicalizes tours") {
  CutPool pool;
  CHECK(pool.add_triangle(TriangleRow{0, 1, 2}));
  CHECK_FALSE(pool.add_triangle(TriangleRow{0, 1, 2}));
  CHECK(pool.add_tour(Tour({0, 1, 2, 3}), CutOrigin::kHeuristic));
  CHECK_FALSE(pool.add_tour(Tour({1, 2, 3, 0}), CutOrigin::kExact));   // rotation
  CHECK_FALSE(pool.add_tour(Tour({0, 3, 2, 1}), CutOrigin::kExact));   // reversal
  CHECK(pool.tours().size() == 1);
}

TEST_CASE("hardening the integral tour vertex of the unit metric") {
  const int n = 6;
  SepSolution xbar = tour_vertex(n);
  SUBCASE("fractional stage hits the full-LP optimum") {
    HardeningResult res = harden_fractional(xbar, 1.0);
    REQUIRE(res.status == HardenStatus::kOptimal);
    CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(res.objective == doctest::Approx(full_hardening_lp(xbar, 1.0)).epsilon(1e-7));
    CHECK(res.lower_bound == res.upper_bound);
    // certificate: metric and every tour at least delta
    CHECK(check_metric(res.instance, 1e-7).empty());
    for (const Tour& t : all_tours(n)) {
      CHECK(tour_cost(res.instance, t) >= 1.0 - 1e-6);
    }
  }
  SUBCASE("integer stage at delta=60 settles on the uniform metric") {
    HardeningResult res = harden_integer(xbar, 60);
    REQUIRE(res.status == HardenStatus::kOptimal);
    CHECK(res.objective == doctest::Approx(60.0));
    CHECK(res.lower_bound == res.upper_bound);
    CHECK(check_metric(res.instance, 0.0).empty());
    TspResult exact = solve_exact(res.instance);
    CHECK(exact.value >= 60.0);
    // the uniform cost 10 vector is feasible with the same objective,
    // so the optimum cannot exceed 60
    CHECK(res.objective <= 60.0 + 1e-9);
  }
}

TEST_CASE("hardening a sampled fractional vertex") {
  auto samples = sample_vertices(8, 2, 77);
  REQUIRE(samples.size() == 2);

  for (const auto& vs : samples) {
    CAPTURE(vs.vertex_hash);
    TspInstance source = TspInstance::fractional(8, vs.source.values.values, "src");

    // source gap, normalized so the optimal tour costs 1
    TspResult src_exact = solve_exact(source);
    const double gap0 = src_exact.value / vs.vertex.value;

    HardeningResult lp_stage = harden_fractional(vs.vertex, 1.0);
    REQUIRE(lp_stage.status == HardenStatus::kOptimal);

    // monotonicity of the fractional stage
    TspResult hard_exact = solve_exact(lp_stage.instance);
    SepSolution hard_sep = solve_sep(lp_stage.instance);
    const double gap1 = hard_exact.value / hard_sep.value;
    CHECK(gap1 >= gap0 - 1e-6);

    // objective is the reciprocal gap of the hardened instance under
    // TOUR = delta normalization
    CHECK(hard_exact.value >= 1.0 - 1e-6);
    CHECK(hard_sep.value <= lp_stage.objective + 1e-6);

    // warm pool contents
    CutPool tight = warm_pool(lp_stage, 0.0);
    CutPool all = warm_pool(lp_stage, 1e18);
    CHECK(all.triangles().size() == static_cast<std::size_t>(3 * 8 * 7 * 6 / 6));
    CHECK(tight.triangles().size() <= all.triangles().size());
    CHECK(tight.tours().size() == lp_stage.cuts.tours().size());

    // integer stage with the warm pool
    HardeningResult ip_stage = harden_integer(vs.vertex, 1000, {}, &tight);
    REQUIRE(ip_stage.status == HardenStatus::kOptimal);
    CHECK(ip_stage.lower_bound == ip_stage.upper_bound);
    CHECK(check_metric(ip_stage.instance, 0.0).empty());
    TspResult certify = solve_exact(ip_stage.instance);
    CHECK(certify.value >= 1000.0);

    // integrality can only raise the minimum at matched delta
    CHECK(ip_stage.objective >= std::floor(1000.0 * lp_stage.objective) - 1e-6);

    // pool validity at termination: every pooled tour row is satisfied
    for (const Tour& t : ip_stage.cuts.tours()) {
      CHECK(tour_cost_i(ip_stage.instance, t) >= 1000);
    }

    // run log carries one record per separation round
    CHECK_FALSE(ip_stage.stats.log.empty());
  }
}

TEST_CASE("delta equal to n degenerates the cost values") {
  auto samples = sample_vertices(8, 1, 4321);
  REQUIRE(samples.size() == 1);
  HardeningResult res = harden_integer(samples[0].vertex, 8);
  REQUIRE(res.status == HardenStatus::kOptimal);
  // The all-ones vector is feasible and scores sum(xbar) = n, so the optimum
  // is at most n. With zero-cost edges admitted it can drop strictly below
  // (the all-ones optimum would need a positive cost floor), and the solver
  // must certify whatever it returns.
  TspInstance ones = TspInstance::integer(8, std::vector<std::int64_t>(num_edges(8), 1));
  CHECK(check_metric(ones, 0.0).empty());
  CHECK(solve_exact(ones).value == doctest::Approx(8.0));
  CHECK(res.objective <= 8.0 + 1e-9);
  CHECK(check_metric(res.instance, 0.0).empty());
  CHECK(solve_exact(res.instance).value >= 8.0);
  // cost values collapse onto a few small levels at this delta
  std::int64_t max_cost = 0;
  for (std::int64_t c : res.instance.costs_i()) max_cost = std::max(max_cost, c);
  CHECK(max_cost <= 2);
}
