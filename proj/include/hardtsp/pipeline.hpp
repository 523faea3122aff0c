#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardtsp/harden.hpp"
#include "hardtsp/instance.hpp"
#include "hardtsp/sampler.hpp"
#include "hardtsp/subtour.hpp"
#include "hardtsp/tsp.hpp"

namespace hardtsp {

struct HardnessProxy {
  int reps = 0;
  double runtime_mean = 0, runtime_std = 0;
  double nodes_mean = 0, nodes_std = 0;
};

// Exact value, relaxation value, their ratio, and the repeated-solve proxy
// backing hardness comparisons (branch-and-bound node counts and wall time
// under distinct derived seeds).
struct EvaluationReport {
  double tour_value = 0;
  double subt_value = 0;
  double gap = 1.0;
  bool sep_fractional = false;
  HardnessProxy hardness;
  std::uint64_t seed = 0;
};

EvaluationReport evaluate(const TspInstance& inst, int reps, std::uint64_t seed);

struct VertexSample {
  MetricPoint source;       // the sampled cost vector
  SepSolution vertex;       // its fractional relaxation optimum
  std::string vertex_hash;  // 9-decimal rounding key, also used for dedup
};

struct SampleVertexConfig {
  int burn_in = 1000;
  int thin = 10;
  std::int64_t max_draws = 100000;
};

// Walk the metric polytope, solve the relaxation per draw, keep fractional
// vertices not seen before. Throws when max_draws is exhausted first.
// Requires n >= 6: smaller complete graphs have no fractional vertices.
std::vector<VertexSample> sample_vertices(int n, int r, std::uint64_t seed,
                                          const SampleVertexConfig& cfg = {});

struct PipelineConfig {
  std::int64_t delta = 1000;
  double time_limit_sec = std::numeric_limits<double>::infinity();
  int reps = 5;
  std::uint64_t seed = 1;
  int jobs = 1;
  double warm_tau = 0.05;
  HardenConfig harden;
  SampleVertexConfig sampling;
};

struct HardenedInstance {
  TspInstance hard;
  EvaluationReport before, after;
  HardeningResult fractional_stage;
  HardeningResult integer_stage;
};

// Full chain on an existing instance: relaxation vertex, fractional harden,
// warm pool, integer harden, paired evaluation. Empty (with a reason) when
// the relaxation optimum is integral or no incumbent was certified in time.
std::optional<HardenedInstance> harden_instance(const TspInstance& inst,
                                                const PipelineConfig& cfg,
                                                std::string* abort_reason = nullptr);

struct GeneratedInstance {
  int vertex_index = 0;
  std::string vertex_hash;
  TspInstance instance;
  EvaluationReport before, after;
  HardenStatus status = HardenStatus::kOptimal;
  double lower_bound = 0, upper_bound = 0;  // integer-stage bounds
  bool gap_regressed = false;  // integer stage landed below the source gap
};

struct GenerateOutcome {
  std::vector<GeneratedInstance> ranked;  // by gap, then hardness proxy
  std::vector<std::string> failures;      // per-vertex skip log
};

// Samples r vertices and hardens each one on a bounded worker pool; results
// are merged by vertex index, then ranked.
GenerateOutcome generate_hard_instances(int n, int r, const PipelineConfig& cfg);

struct RegressionFit {
  double slope = 0, intercept = 0;
  std::vector<double> residuals;  // in log10 space
};

// Ordinary least squares of log10(runtime) on n. Requires at least two
// distinct n values and positive runtimes.
RegressionFit fit_runtime_regression(const std::vector<std::pair<int, double>>& records);

// Line-oriented "key: value" metadata written next to each instance file.
std::string sidecar_text(const GeneratedInstance& g, const PipelineConfig& cfg);
// CSV table over the generated batch, one row per instance.
std::string summary_csv(const std::vector<GeneratedInstance>& ranked);

}  // namespace hardtsp
