#include "hardtsp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardtsp/kernels.hpp"

namespace hardtsp {

namespace {

void sort_by_violation(std::vector<TriangleViolation>& v) {
  std::sort(v.begin(), v.end(), [](const TriangleViolation& a, const TriangleViolation& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
  });
}

}  // namespace

std::vector<TriangleViolation> check_metric(const TspInstance& inst, double tol) {
  if (tol < 0.0) throw std::invalid_argument("check_metric: tol must be >= 0");
  std::vector<TriangleViolation> out;
  if (inst.is_integer()) {
    // exact arithmetic; tol is floored to whole units
    const auto t = static_cast<std::int64_t>(tol);
    const int n = inst.n();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::int64_t cij = inst.cost_i(i, j);
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const std::int64_t v = cij - inst.cost_i(i, k) - inst.cost_i(j, k);
          if (v > t) out.push_back({i, j, k, static_cast<double>(v)});
        }
      }
    }
  } else {
    const std::vector<double> m = inst.cost_vector().to_dense();
    std::vector<kernels::TriViol> raw;
    kernels::scan_triangle_violations(m.data(), inst.n(), tol, raw);
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back({r.i, r.j, r.k, r.violation});
  }
  sort_by_violation(out);
  return out;
}

TspInstance metric_closure(const TspInstance& inst) {
  const int n = inst.n();
  std::vector<double> d = inst.cost_vector().to_dense();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double dik = d[static_cast<std::size_t>(i) * n + k];
      for (int j = 0; j < n; ++j) {
        double& dij = d[static_cast<std::size_t>(i) * n + j];
        const double via = dik + d[static_cast<std::size_t>(k) * n + j];
        if (via < dij) dij = via;
      }
    }
  }
  std::vector<double> costs(static_cast<std::size_t>(num_edges(n)));
  int e = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++e) costs[static_cast<std::size_t>(e)] = d[static_cast<std::size_t>(i) * n + j];
  return TspInstance::fractional(n, std::move(costs), inst.name());
}

ScaleRoundResult scale_and_round(const EdgeVector& costs, double factor, std::string name) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_and_round: factor must be > 0");
  constexpr double kMaxExact = 9007199254740992.0;  // 2^53
  std::vector<std::int64_t> icosts;
  icosts.reserve(costs.values.size());
  for (double c : costs.values) {
    const double scaled = factor * c;
    if (!(std::abs(scaled) < kMaxExact))
      throw std::overflow_error("scale_and_round: scaled cost exceeds exact integer range");
    icosts.push_back(std::llround(scaled));
  }
  ScaleRoundResult res{TspInstance::integer(costs.n, std::move(icosts), std::move(name)), {}};
  res.metric_report = check_metric(res.instance, 0.0);
  return res;
}

TspInstance hamiltonian_cycle_reduction(const UndirectedGraph& g, double eps) {
  const int n = g.n();
  if (n < 3) throw std::invalid_argument("hamiltonian_cycle_reduction: n must be >= 3");
  const double beta = 2.0 / (n + 1);
  if (!(eps > 0.0) || !(eps < beta))
    throw std::invalid_argument("hamiltonian_cycle_reduction: eps must be in (0, 2/(n+1))");
  const double on_edge = (1.0 - eps / 2.0) / n;
  const double off_edge = (2.0 - eps) / n;
  std::vector<double> costs(static_cast<std::size_t>(num_edges(n)), off_edge);
  for (auto [a, b] : g.edges()) costs[static_cast<std::size_t>(edge_index_u(a, b, n))] = on_edge;
  return TspInstance::fractional(n, std::move(costs), "hc_reduction");
}

}  // namespace hardtsp
