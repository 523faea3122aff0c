#include "hardtsp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardtsp/kernels.hpp"

namespace hardtsp {

namespace {

EdgeVector isotropic_direction(int n, Rng& rng) {
  EdgeVector d(n);
  double norm2 = 0.0;
  for (double& v : d.values) {
    v = rng.normal();
    norm2 += v * v;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : d.values) v *= inv;
  return d;
}

}  // namespace

MetricPoint initial_interior_point(int n) {
  if (n < 3) throw std::invalid_argument("initial_interior_point: n must be >= 3");
  return MetricPoint{n, EdgeVector(n, 0.5)};
}

std::pair<double, double> chord(const MetricPoint& point, const EdgeVector& direction) {
  if (point.n != direction.n) throw std::invalid_argument("chord: dimension mismatch");
  bool nonzero = false;
  for (double v : direction.values) {
    if (v != 0.0) {
      nonzero = true;
      break;
    }
  }
  if (!nonzero) throw std::invalid_argument("chord: zero direction");
  const std::vector<double> p = point.values.to_dense();
  const std::vector<double> d = direction.to_dense();
  const kernels::Interval iv = kernels::metric_chord(p.data(), d.data(), point.n);
  return {iv.lo, iv.hi};
}

MetricPoint hit_and_run_step(const MetricPoint& point, Rng& rng, const SamplerConfig& cfg) {
  for (int attempt = 0; attempt < cfg.max_direction_retries; ++attempt) {
    const EdgeVector dir = isotropic_direction(point.n, rng);
    const auto [lo, hi] = chord(point, dir);
    if (!(hi - lo > 1e-12)) continue;  // degenerate chord, resample direction
    const double t = rng.uniform(lo, hi);
    MetricPoint next{point.n, point.values};
    for (int e = 0; e < next.values.size(); ++e) next.values[e] += t * dir[e];
    return next;
  }
  throw std::runtime_error("hit_and_run_step: chord stayed degenerate after retries");
}

std::vector<MetricPoint> sample_metric(int n, int count, int burn_in, int thin,
                                       std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_metric: count must be >= 1");
  if (thin < 1) thin = 1;
  Rng rng(seed);
  MetricPoint p = initial_interior_point(n);
  for (int i = 0; i < burn_in; ++i) p = hit_and_run_step(p, rng);
  std::vector<MetricPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    for (int i = 0; i < thin; ++i) p = hit_and_run_step(p, rng);
    out.push_back(p);
  }
  return out;
}

double metric_polytope_violation(const MetricPoint& point) {
  const int n = point.n;
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double cij = point.values.at(i, j);
      worst = std::max(worst, -cij);  // nonnegativity
      for (int k = j + 1; k < n; ++k) {
        const double cik = point.values.at(i, k);
        const double cjk = point.values.at(j, k);
        worst = std::max(worst, cij - cik - cjk);
        worst = std::max(worst, cik - cij - cjk);
        worst = std::max(worst, cjk - cij - cik);
        worst = std::max(worst, cij + cik + cjk - 2.0);
      }
    }
  }
  return worst;
}

}  // namespace hardtsp
