#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hardtsp/instance.hpp"
#include "hardtsp/rng.hpp"

namespace hardtsp {

// Point of the metric polytope: all triangle inequalities, all perimeter
// inequalities c_ij + c_ik + c_jk <= 2, and nonnegativity.
struct MetricPoint {
  int n = 0;
  EdgeVector values;
};

struct SamplerConfig {
  int burn_in = 1000;
  int thin = 10;
  int max_direction_retries = 32;  // degenerate chord resampling budget
};

// The all-0.5 vector: every polytope row has slack 0.5.
MetricPoint initial_interior_point(int n);

// Exact feasible interval [lo, hi] of t for point + t * direction staying in
// the polytope; lo <= 0 <= hi for a feasible point.
std::pair<double, double> chord(const MetricPoint& point, const EdgeVector& direction);

// Isotropic direction, uniform step along the chord.
MetricPoint hit_and_run_step(const MetricPoint& point, Rng& rng,
                             const SamplerConfig& cfg = {});

// Markov chain with burn-in and thinning; byte-identical output for the same
// (n, count, burn_in, thin, seed).
std::vector<MetricPoint> sample_metric(int n, int count, int burn_in, int thin,
                                       std::uint64_t seed);

// Largest violation over every polytope row (<= 0 means feasible).
double metric_polytope_violation(const MetricPoint& p);

}  // namespace hardtsp
