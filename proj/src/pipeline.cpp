#include "hardtsp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hardtsp/metric.hpp"
#include "hardtsp/rng.hpp"

namespace hardtsp {

namespace {

std::string hash_vertex(const EdgeVector& x) {
  // FNV-1a over the 9-decimal rounding of the entries
  std::uint64_t h = 1469598103934665603ULL;
  char buf[32];
  for (double v : x.values) {
    const long long r = std::llround(v * 1e9);
    const int len = std::snprintf(buf, sizeof buf, "%lld,", r);
    for (int i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

EvaluationReport evaluate(const TspInstance& inst, int reps, std::uint64_t seed) {
  EvaluationReport rep;
  rep.seed = seed;

  ExactOptions exact_opts;
  exact_opts.seed = Rng::derive_seed(seed, 0);
  TspResult exact = solve_exact(inst, std::nullopt, exact_opts);
  rep.tour_value = exact.value;

  SepSolution sep = solve_sep(inst);
  rep.subt_value = sep.value;
  rep.sep_fractional = sep.fractional;
  rep.gap = sep.value > 0 ? exact.value / sep.value : 1.0;

  if (rep.gap < 1.0 - 1e-9) {
    throw std::logic_error("evaluate: gap below 1; relaxation exceeded the exact optimum");
  }
  if (rep.gap > 1.5 + 1e-9 && check_metric(inst, 1e-9).empty()) {
    throw std::logic_error("evaluate: metric instance with gap above 3/2");
  }

  std::vector<double> runtimes, nodes;
  for (int r = 0; r < reps; ++r) {
    ExactOptions opts;
    opts.mode = ExactMode::kBranchAndBound;  // the proxy counts search nodes
    opts.seed = Rng::derive_seed(seed, 100 + static_cast<std::uint64_t>(r));
    TspResult run = solve_exact(inst, std::nullopt, opts);
    runtimes.push_back(run.runtime_sec);
    nodes.push_back(static_cast<double>(run.nodes_explored));
  }
  rep.hardness.reps = reps;
  std::tie(rep.hardness.runtime_mean, rep.hardness.runtime_std) = mean_std(runtimes);
  std::tie(rep.hardness.nodes_mean, rep.hardness.nodes_std) = mean_std(nodes);
  return rep;
}

std::vector<VertexSample> sample_vertices(int n, int r, std::uint64_t seed,
                                          const SampleVertexConfig& cfg) {
  if (n < 6)
    throw std::invalid_argument("sample_vertices: n must be >= 6 (no fractional vertices below)");
  if (r < 1) throw std::invalid_argument("sample_vertices: r must be >= 1");

  std::vector<VertexSample> out;
  std::set<std::string> seen;
  Rng rng(seed);
  MetricPoint point = initial_interior_point(n);
  for (int i = 0; i < cfg.burn_in; ++i) point = hit_and_run_step(point, rng);

  std::int64_t draws = 0;
  while (static_cast<int>(out.size()) < r) {
    if (++draws > cfg.max_draws)
      throw std::runtime_error("sample_vertices: draw budget exhausted before finding enough vertices");
    for (int i = 0; i < cfg.thin; ++i) point = hit_and_run_step(point, rng);
    TspInstance inst = TspInstance::fractional(n, point.values.values, "sampled");
    SepSolution sep = solve_sep(inst);
    if (!sep.fractional) continue;
    std::string key = hash_vertex(sep.x);
    if (!seen.insert(key).second) continue;
    out.push_back(VertexSample{point, std::move(sep), std::move(key)});
  }
  return out;
}

namespace {

// Shared tail of the two hardening entry points: fractional stage, warm
// pool, integer stage, paired evaluation.
std::optional<HardenedInstance> harden_from_vertex(const TspInstance& source,
                                                   const SepSolution& xbar,
                                                   const PipelineConfig& cfg,
                                                   std::uint64_t stream,
                                                   std::string* abort_reason) {
  EvaluationReport before = evaluate(source, cfg.reps, Rng::derive_seed(cfg.seed, stream));

  HardenConfig hc = cfg.harden;
  hc.seed = Rng::derive_seed(cfg.seed, stream + 1);
  hc.time_limit_sec = cfg.time_limit_sec;

  HardeningResult lp_stage = harden_fractional(xbar, 1.0, hc);
  CutPool pool = warm_pool(lp_stage, cfg.warm_tau);
  HardeningResult ip_stage = harden_integer(xbar, cfg.delta, hc, &pool);

  if (ip_stage.status == HardenStatus::kInfeasible ||
      (ip_stage.status == HardenStatus::kTimeLimit && !std::isfinite(ip_stage.upper_bound))) {
    if (abort_reason != nullptr)
      *abort_reason = std::string("integer stage ended without an incumbent: ") +
                      to_string(ip_stage.status);
    return std::nullopt;
  }

  TspInstance hard = ip_stage.instance;
  if (!source.name().empty()) hard.set_name(source.name() + "_hard");
  EvaluationReport after = evaluate(hard, cfg.reps, Rng::derive_seed(cfg.seed, stream + 2));
  return HardenedInstance{std::move(hard), before, after, std::move(lp_stage), std::move(ip_stage)};
}

}  // namespace

std::optional<HardenedInstance> harden_instance(const TspInstance& inst, const PipelineConfig& cfg,
                                                std::string* abort_reason) {
  SepSolution sep = solve_sep(inst);
  if (!sep.fractional) {
    if (abort_reason != nullptr) *abort_reason = "relaxation optimum is integral";
    return std::nullopt;
  }
  return harden_from_vertex(inst, sep, cfg, 10, abort_reason);
}

GenerateOutcome generate_hard_instances(int n, int r, const PipelineConfig& cfg) {
  GenerateOutcome outcome;
  std::vector<VertexSample> samples = sample_vertices(n, r, cfg.seed, cfg.sampling);

  struct Slot {
    std::optional<GeneratedInstance> result;
    std::string failure;
  };
  std::vector<Slot> slots(samples.size());

  auto work = [&](int index) {
    const VertexSample& vs = samples[static_cast<std::size_t>(index)];
    std::ostringstream name;
    name << "sampled_n" << n << "_v" << index;
    TspInstance source = TspInstance::fractional(n, vs.source.values.values, name.str());
    std::string reason;
    try {
      auto hardened = harden_from_vertex(source, vs.vertex, cfg,
                                         1000 * (static_cast<std::uint64_t>(index) + 1), &reason);
      if (!hardened) {
        slots[static_cast<std::size_t>(index)].failure =
            "vertex " + std::to_string(index) + ": " + reason;
        return;
      }
      GeneratedInstance g{index,
                          vs.vertex_hash,
                          hardened->hard,
                          hardened->before,
                          hardened->after,
                          hardened->integer_stage.status,
                          hardened->integer_stage.lower_bound,
                          hardened->integer_stage.upper_bound,
                          hardened->after.gap < hardened->before.gap - 1e-9};
      slots[static_cast<std::size_t>(index)].result = std::move(g);
    } catch (const std::exception& e) {
      slots[static_cast<std::size_t>(index)].failure =
          "vertex " + std::to_string(index) + ": " + e.what();
    }
  };

  const int jobs = std::max(1, std::min(cfg.jobs, static_cast<int>(samples.size())));
  if (jobs == 1) {
    for (int i = 0; i < static_cast<int>(samples.size()); ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= static_cast<int>(samples.size())) return;
          work(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // deterministic merge by vertex index, then rank
  for (Slot& s : slots) {
    if (s.result) {
      outcome.ranked.push_back(std::move(*s.result));
    } else if (!s.failure.empty()) {
      outcome.failures.push_back(std::move(s.failure));
    }
  }
  std::stable_sort(outcome.ranked.begin(), outcome.ranked.end(),
                   [](const GeneratedInstance& a, const GeneratedInstance& b) {
                     if (a.after.gap != b.after.gap) return a.after.gap > b.after.gap;
                     if (a.after.hardness.nodes_mean != b.after.hardness.nodes_mean)
                       return a.after.hardness.nodes_mean > b.after.hardness.nodes_mean;
                     return a.vertex_index < b.vertex_index;
                   });
  return outcome;
}

RegressionFit fit_runtime_regression(const std::vector<std::pair<int, double>>& records) {
  if (records.size() < 2)
    throw std::invalid_argument("fit_runtime_regression: need at least two records");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int first_n = records.front().first;
  bool distinct = false;
  for (auto [n, t] : records) {
    if (!(t > 0)) throw std::invalid_argument("fit_runtime_regression: runtimes must be positive");
    if (n != first_n) distinct = true;
    const double y = std::log10(t);
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  if (!distinct)
    throw std::invalid_argument("fit_runtime_regression: need at least two distinct n values");
  const double count = static_cast<double>(records.size());
  RegressionFit fit;
  fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / count;
  fit.residuals.reserve(records.size());
  for (auto [n, t] : records) {
    fit.residuals.push_back(std::log10(t) - (fit.slope * n + fit.intercept));
  }
  return fit;
}

std::string sidecar_text(const GeneratedInstance& g, const PipelineConfig& cfg) {
  std::ostringstream os;
  os.precision(12);
  os << "name: " << g.instance.name() << "\n";
  os << "n: " << g.instance.n() << "\n";
  os << "seed: " << cfg.seed << "\n";
  os << "delta: " << cfg.delta << "\n";
  os << "vertex_index: " << g.vertex_index << "\n";
  os << "vertex_hash: " << g.vertex_hash << "\n";
  os << "status: " << to_string(g.status) << "\n";
  os << "lower_bound: " << g.lower_bound << "\n";
  os << "upper_bound: " << g.upper_bound << "\n";
  os << "gap_before: " << g.before.gap << "\n";
  os << "gap_after: " << g.after.gap << "\n";
  os << "tour_after: " << g.after.tour_value << "\n";
  os << "subt_after: " << g.after.subt_value << "\n";
  os << "gap_regressed: " << (g.gap_regressed ? "yes" : "no") << "\n";
  os << "nodes_mean_before: " << g.before.hardness.nodes_mean << "\n";
  os << "nodes_mean_after: " << g.after.hardness.nodes_mean << "\n";
  os << "runtime_mean_before: " << g.before.hardness.runtime_mean << "\n";
  os << "runtime_mean_after: " << g.after.hardness.runtime_mean << "\n";
  return os.str();
}

std::string summary_csv(const std::vector<GeneratedInstance>& ranked) {
  std::ostringstream os;
  os.precision(12);
  os << "rank,vertex_index,vertex_hash,n,gap_before,gap_after,status,gap_regressed,"
        "nodes_mean_before,nodes_std_before,nodes_mean_after,nodes_std_after,"
        "runtime_mean_before,runtime_std_before,runtime_mean_after,runtime_std_after\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const GeneratedInstance& g = ranked[i];
    os << i + 1 << ',' << g.vertex_index << ',' << g.vertex_hash << ',' << g.instance.n() << ','
       << g.before.gap << ',' << g.after.gap << ',' << to_string(g.status) << ','
       << (g.gap_regressed ? "yes" : "no") << ',' << g.before.hardness.nodes_mean << ','
       << g.before.hardness.nodes_std << ',' << g.after.hardness.nodes_mean << ','
       << g.after.hardness.nodes_std << ',' << g.before.hardness.runtime_mean << ','
       << g.before.hardness.runtime_std << ',' << g.after.hardness.runtime_mean << ','
       << g.after.hardness.runtime_std << '\n';
  }
  return os.str();
}

}  // namespace hardtsp
