#include "hardtsp/mincut.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hardtsp {

namespace {

// Connected components of the support graph; each component sorted, the list
// ordered by minimum node index.
std::vector<std::vector<int>> components(const EdgeVector& x, double tol) {
  const int n = x.n;
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> stack{start};
    comp[static_cast<std::size_t>(start)] = id;
    std::vector<int> members;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int u = 0; u < n; ++u) {
        if (u == v || comp[static_cast<std::size_t>(u)] >= 0) continue;
        if (x.at(v, u) > tol) {
          comp[static_cast<std::size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

GlobalMinCut global_min_cut(const EdgeVector& x, double support_tol) {
  const int n = x.n;
  if (n < 2) throw std::invalid_argument("global_min_cut: n must be >= 2");

  auto comps = components(x, support_tol);
  if (comps.size() > 1) {
    GlobalMinCut cut;
    cut.value = 0.0;
    cut.disconnected = true;
    // smallest-min-index component not containing node 0 (component 0 holds it)
    cut.side = comps[1];
    return cut;
  }

  // Stoer-Wagner with supernode merging. active[] tracks the current
  // contracted nodes; merged[v] lists the original nodes inside supernode v.
  std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = x.at(i, j);
      const double clipped = v > support_tol ? v : 0.0;
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = clipped;
      w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = clipped;
    }
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<std::vector<int>> merged(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) merged[static_cast<std::size_t>(v)] = {v};

  double best_value = std::numeric_limits<double>::infinity();
  std::vector<int> best_side;

  for (int phase = n; phase > 1; --phase) {
    // minimum cut phase: maximum adjacency order from the lowest active node
    std::vector<char> added(static_cast<std::size_t>(n), 0);
    std::vector<double> adj(static_cast<std::size_t>(n), 0.0);
    int first = -1;
    for (int v = 0; v < n && first < 0; ++v)
      if (active[static_cast<std::size_t>(v)]) first = v;
    added[static_cast<std::size_t>(first)] = 1;
    for (int v = 0; v < n; ++v)
      if (active[static_cast<std::size_t>(v)] && !added[static_cast<std::size_t>(v)])
        adj[static_cast<std::size_t>(v)] = w[static_cast<std::size_t>(first)][static_cast<std::size_t>(v)];

    int prev = first, last = first;
    double last_adj = 0.0;
    for (int step = 1; step < phase; ++step) {
      int pick = -1;
      double best_adj = -1.0;
      for (int v = 0; v < n; ++v) {
        if (!active[static_cast<std::size_t>(v)] || added[static_cast<std::size_t>(v)]) continue;
        if (adj[static_cast<std::size_t>(v)] > best_adj) {
          best_adj = adj[static_cast<std::size_t>(v)];
          pick = v;
        }
      }
      added[static_cast<std::size_t>(pick)] = 1;
      prev = last;
      last = pick;
      last_adj = best_adj;
      for (int v = 0; v < n; ++v) {
        if (!active[static_cast<std::size_t>(v)] || added[static_cast<std::size_t>(v)]) continue;
        adj[static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(pick)][static_cast<std::size_t>(v)];
      }
    }

    // cut-of-the-phase: the supernode added last against everything else.
    // Ties go to the side holding the lowest-numbered node.
    const double cut_value = last_adj;
    bool take = cut_value < best_value - 1e-12;
    if (!take && cut_value <= best_value + 1e-12 && !best_side.empty()) {
      const int cand_min = *std::min_element(merged[static_cast<std::size_t>(last)].begin(),
                                             merged[static_cast<std::size_t>(last)].end());
      const int best_min = *std::min_element(best_side.begin(), best_side.end());
      take = cand_min < best_min;
    }
    if (take || best_side.empty()) {
      best_value = std::min(best_value, cut_value);
      best_side = merged[static_cast<std::size_t>(last)];
    }

    // merge last into prev
    for (int v = 0; v < n; ++v) {
      if (!active[static_cast<std::size_t>(v)] || v == last || v == prev) continue;
      w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)] += w[static_cast<std::size_t>(last)][static_cast<std::size_t>(v)];
      w[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev)] = w[static_cast<std::size_t>(prev)][static_cast<std::size_t>(v)];
    }
    active[static_cast<std::size_t>(last)] = 0;
    auto& bucket = merged[static_cast<std::size_t>(prev)];
    bucket.insert(bucket.end(), merged[static_cast<std::size_t>(last)].begin(), merged[static_cast<std::size_t>(last)].end());
  }

  GlobalMinCut cut;
  cut.value = best_value;
  std::sort(best_side.begin(), best_side.end());
  // canonical side: the one without node 0
  if (!best_side.empty() && best_side.front() == 0) {
    std::vector<int> flip;
    std::vector<char> in_side(static_cast<std::size_t>(n), 0);
    for (int v : best_side) in_side[static_cast<std::size_t>(v)] = 1;
    for (int v = 0; v < n; ++v)
      if (!in_side[static_cast<std::size_t>(v)]) flip.push_back(v);
    cut.side = std::move(flip);
  } else {
    cut.side = std::move(best_side);
  }
  return cut;
}

}  // namespace hardtsp
