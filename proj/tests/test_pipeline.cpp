#include <doctest.h>

#include <sstream>

#include "hardtsp/dot_export.hpp"
#include "hardtsp/metric.hpp"
#include "hardtsp/pipeline.hpp"
#include "hardtsp/rng.hpp"
#include "hardtsp/tsplib.hpp"

using namespace hardtsp;

namespace {

const std::string kDataDir = HARDTSP_TEST_DATA_DIR;

TspInstance random_metric(int n, Rng& rng) {
  std::vector<double> c(static_cast<std::size_t>(num_edges(n)));
  for (double& v : c) v = rng.uniform(0.1, 1.0);
  return metric_closure(TspInstance::fractional(n, c));
}

int count_occurrences(const std::string& text, const std::string& pattern) {
  int count = 0;
  std::size_t at = 0;
  while ((at = text.find(pattern, at)) != std::string::npos) {
    ++count;
    at += pattern.size();
  }
  return count;
}

}  // namespace

TEST_CASE("evaluate") {
  SUBCASE("unit metric n=8 has gap 1") {
    EvaluationReport rep = evaluate(TspInstance::uniform(8, 1.0), 2, 5);
    CHECK(rep.gap == doctest::Approx(1.0));
    CHECK(rep.hardness.reps == 2);
  }
  SUBCASE("n <= 5 metric instances always have gap 1") {
    Rng rng(31);
    for (int n : {3, 4, 5}) {
      for (int trial = 0; trial < 5; ++trial) {
        EvaluationReport rep = evaluate(random_metric(n, rng), 0, 1);
        CHECK(rep.gap == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("sample_vertices") {
  SUBCASE("reproducible and well-formed") {
    auto a = sample_vertices(8, 3, 2024);
    auto b = sample_vertices(8, 3, 2024);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].vertex_hash == b[i].vertex_hash);
      CHECK(a[i].source.values.values == b[i].source.values.values);
      CHECK(a[i].vertex.fractional);
      CHECK_FALSE(separate_subtour(a[i].vertex.x).has_value());
      for (double xe : a[i].vertex.x.values) {
        CHECK(xe >= -1e-7);
        CHECK(xe <= 1.0 + 1e-7);
      }
    }
    // distinct vertices
    CHECK(a[0].vertex_hash != a[1].vertex_hash);
    CHECK(a[1].vertex_hash != a[2].vertex_hash);
  }
  SUBCASE("n below 6 is rejected") {
    CHECK_THROWS(sample_vertices(5, 1, 1));
  }
}

TEST_CASE("tsplib") {
  SUBCASE("write-read round trip is cost exact") {
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 6 + trial;
      std::vector<std::int64_t> costs(static_cast<std::size_t>(num_edges(n)));
      for (auto& v : costs) v = rng.uniform_int(5000);
      TspInstance inst = TspInstance::integer(n, costs, "roundtrip");
      std::stringstream buf;
      tsplib_write(inst, buf);
      TspInstance back = tsplib_parse(buf);
      CHECK(back.n() == n);
      CHECK(back.costs_i() == inst.costs_i());
      CHECK(back.name() == "roundtrip");
    }
  }
  SUBCASE("unsupported weight types are named in the error") {
    std::stringstream in(
        "NAME: x\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: CEIL_2D\nEOF\n");
    try {
      tsplib_parse(in);
      FAIL("expected a parse error");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find("CEIL_2D") != std::string::npos);
    }
  }
  SUBCASE("EUC_2D uses nearest-integer rounding") {
    std::stringstream in(
        "NAME: tri\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"
        "NODE_COORD_SECTION\n1 0 0\n2 3 4\n3 0 1\nEOF\n");
    TspInstance inst = tsplib_parse(in);
    CHECK(inst.cost_i(0, 1) == 5);   // exact 5.0
    CHECK(inst.cost_i(0, 2) == 1);
    CHECK(inst.cost_i(1, 2) == 4);   // sqrt(18) = 4.24 -> 4
  }
  SUBCASE("UPPER_ROW and FULL_MATRIX agree") {
    std::stringstream upper(
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
        "EDGE_WEIGHT_FORMAT: UPPER_ROW\nEDGE_WEIGHT_SECTION\n1 2 3 4 5 6\nEOF\n");
    std::stringstream full(
        "TYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
        "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n"
        "0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 6 0\nEOF\n");
    TspInstance a = tsplib_parse(upper);
    TspInstance b = tsplib_parse(full);
    CHECK(a.costs_i() == b.costs_i());
  }
  SUBCASE("gr24 parses to 24 nodes with the published first row") {
    TspInstance gr24 = tsplib_read(kDataDir + "/gr24.tsp");
    CHECK(gr24.n() == 24);
    CHECK(gr24.name() == "gr24");
    CHECK(gr24.cost_i(0, 1) == 257);
    CHECK(gr24.cost_i(0, 23) == 121);
    CHECK(gr24.cost_i(22, 23) == 169);
  }
}

TEST_CASE("export_dot") {
  SUBCASE("integral tour gives n solid edges") {
    TspInstance inst = TspInstance::uniform(6, 1.0);
    Tour t({0, 1, 2, 3, 4, 5});
    const std::string dot = export_dot(inst, t.incidence());
    CHECK(count_occurrences(dot, " -- ") == 6);
    CHECK(count_occurrences(dot, "dashed") == 0);
  }
  SUBCASE("half-integer entries come out dashed") {
    TspInstance inst = TspInstance::uniform(6, 1.0);
    EdgeVector x(6, 0.0);
    x.at(0, 1) = 1.0;
    x.at(1, 2) = 0.5;
    x.at(2, 0) = 0.5;
    const std::string dot = export_dot(inst, x);
    CHECK(count_occurrences(dot, " -- ") == 3);
    CHECK(count_occurrences(dot, "dashed") == 2);
  }
}

TEST_CASE("fit_runtime_regression") {
  SUBCASE("recovers an exact power law") {
    std::vector<std::pair<int, double>> records;
    for (int n : {10, 12, 14, 16}) records.push_back({n, std::pow(10.0, 0.1 * n - 1.0)});
    RegressionFit fit = fit_runtime_regression(records);
    CHECK(fit.slope == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(-1.0).epsilon(1e-9));
    for (double r : fit.residuals) CHECK(std::abs(r) < 1e-9);
  }
  SUBCASE("rejects degenerate input") {
    CHECK_THROWS(fit_runtime_regression({{10, 1.0}}));
    CHECK_THROWS(fit_runtime_regression({{10, 1.0}, {10, 2.0}}));
    CHECK_THROWS(fit_runtime_regression({{10, 1.0}, {12, -2.0}}));
  }
}

TEST_CASE("harden_instance") {
  SUBCASE("aborts on an integral relaxation optimum") {
    PipelineConfig cfg;
    cfg.reps = 0;
    std::string reason;
    auto out = harden_instance(TspInstance::uniform(8, 1.0), cfg, &reason);
    CHECK_FALSE(out.has_value());
    CHECK(reason.find("integral") != std::string::npos);
  }
}

TEST_CASE("generate_hard_instances smoke run") {
  PipelineConfig cfg;
  cfg.delta = 100;
  cfg.reps = 1;
  cfg.seed = 7;
  cfg.jobs = 2;
  GenerateOutcome out = generate_hard_instances(8, 2, cfg);
  CHECK(out.failures.empty());
  REQUIRE(out.ranked.size() == 2);
  for (const GeneratedInstance& g : out.ranked) {
    CHECK(g.instance.is_integer());
    CHECK(check_metric(g.instance, 0.0).empty());
    CHECK(g.after.gap >= 1.0 - 1e-9);
    CHECK(g.after.gap <= 1.5 + 1e-9);
    // the integer stage may land below the source gap; the flag must say so
    CHECK(g.gap_regressed == (g.after.gap < g.before.gap - 1e-9));
  }
  CHECK(out.ranked[0].after.gap >= out.ranked[1].after.gap);

  // instance payloads are deterministic for a fixed configuration
  GenerateOutcome again = generate_hard_instances(8, 2, cfg);
  REQUIRE(again.ranked.size() == 2);
  for (std::size_t i = 0; i < out.ranked.size(); ++i) {
    CHECK(out.ranked[i].instance.costs_i() == again.ranked[i].instance.costs_i());
    CHECK(out.ranked[i].vertex_hash == again.ranked[i].vertex_hash);
  }

  // sidecar and summary smoke
  const std::string meta = sidecar_text(out.ranked[0], cfg);
  CHECK(meta.find("delta: 100") != std::string::npos);
  CHECK(meta.find("vertex_hash: ") != std::string::npos);
  const std::string csv = summary_csv(out.ranked);
  CHECK(count_occurrences(csv, "\n") == 3);  // header + 2 rows
}
