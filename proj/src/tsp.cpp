#include "hardtsp/tsp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "hardtsp/rng.hpp"

namespace hardtsp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_sec(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename CostT>
constexpr CostT cost_infinity() {
  if constexpr (std::is_same_v<CostT, double>) {
    return std::numeric_limits<double>::infinity();
  } else {
    return std::numeric_limits<std::int64_t>::max() / 4;
  }
}

template <typename CostT>
std::vector<CostT> edge_costs(const TspInstance& inst) {
  if constexpr (std::is_same_v<CostT, double>) {
    return inst.costs();
  } else {
    return inst.costs_i();
  }
}

template <typename CostT>
CostT exact_tour_cost(const TspInstance& inst, const Tour& t) {
  if constexpr (std::is_same_v<CostT, double>) {
    return tour_cost(inst, t);
  } else {
    return tour_cost_i(inst, t);
  }
}

// ---------------------------------------------------------------------------
// Held-Karp dynamic program
// ---------------------------------------------------------------------------

template <typename CostT>
std::pair<std::vector<int>, CostT> held_karp_impl(int n, const std::vector<CostT>& c) {
  const int k = n - 1;  // nodes 1..n-1 mapped to bits 0..k-1
  const std::size_t masks = std::size_t{1} << k;
  const CostT inf = cost_infinity<CostT>();
  auto cost = [&](int i, int j) { return c[static_cast<std::size_t>(edge_index_u(i, j, n))]; };

  std::vector<CostT> dp(masks * static_cast<std::size_t>(k), inf);
  std::vector<std::uint8_t> parent(masks * static_cast<std::size_t>(k), 0xff);
  for (int j = 0; j < k; ++j) {
    dp[(std::size_t{1} << j) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] = cost(0, j + 1);
  }
  for (std::size_t mask = 1; mask < masks; ++mask) {
    const std::size_t base = mask * static_cast<std::size_t>(k);
    for (int j = 0; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const std::size_t prev_mask = mask ^ (std::size_t{1} << j);
      if (prev_mask == 0) continue;
      const std::size_t pbase = prev_mask * static_cast<std::size_t>(k);
      CostT best = inf;
      int best_k = -1;
      for (int t = 0; t < k; ++t) {
        if (!(prev_mask & (std::size_t{1} << t))) continue;
        const CostT cand = dp[pbase + static_cast<std::size_t>(t)] + cost(t + 1, j + 1);
        if (cand < best) {
          best = cand;
          best_k = t;
        }
      }
      dp[base + static_cast<std::size_t>(j)] = best;
      parent[base + static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(best_k);
    }
  }

  const std::size_t full = masks - 1;
  CostT best = inf;
  int best_end = 0;
  for (int j = 0; j < k; ++j) {
    const CostT cand = dp[full * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] + cost(j + 1, 0);
    if (cand < best) {
      best = cand;
      best_end = j;
    }
  }

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::size_t mask = full;
  int j = best_end;
  while (j >= 0) {
    order.push_back(j + 1);
    const int pj = parent[mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
    mask ^= (std::size_t{1} << j);
    j = pj == 0xff ? -1 : pj;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return {order, best};
}

// ---------------------------------------------------------------------------
// 1-tree bound machinery
// ---------------------------------------------------------------------------

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int n) : up(static_cast<std::size_t>(n)) {
    std::iota(up.begin(), up.end(), 0);
  }
  int find(int v) {
    while (up[static_cast<std::size_t>(v)] != v) {
      up[static_cast<std::size_t>(v)] = up[static_cast<std::size_t>(up[static_cast<std::size_t>(v)])];
      v = up[static_cast<std::size_t>(v)];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

template <typename CostT>
struct OneTree {
  bool feasible = false;
  CostT bound = 0;               // penalized tree value minus 2 * sum(pi)
  std::vector<int> edges;        // n edge ids
  std::vector<int> degree;
  bool is_tour = false;
};

// state: 0 free, +1 forced, -1 excluded; forced_deg: forced edges per node.
template <typename CostT>
OneTree<CostT> build_one_tree(int n, const std::vector<CostT>& c,
                              const std::vector<std::int8_t>& state,
                              const std::vector<int>& forced_deg,
                              const std::vector<CostT>& pi) {
  OneTree<CostT> out;
  out.degree.assign(static_cast<std::size_t>(n), 0);
  auto penalized = [&](int i, int j) {
    return c[static_cast<std::size_t>(edge_index_u(i, j, n))] + pi[static_cast<std::size_t>(i)] + pi[static_cast<std::size_t>(j)];
  };
  auto allowed = [&](int e, int i, int j) {
    if (state[static_cast<std::size_t>(e)] == -1) return false;
    if (state[static_cast<std::size_t>(e)] == 1) return true;
    if (forced_deg[static_cast<std::size_t>(i)] >= 2 || forced_deg[static_cast<std::size_t>(j)] >= 2) return false;
    return true;
  };

  CostT tree_value = 0;
  Dsu dsu(n);
  int tree_edges = 0;

  // forced edges among nodes {1..n-1} go in first
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int e = edge_index(i, j, n);
      if (state[static_cast<std::size_t>(e)] != 1) continue;
      if (!dsu.unite(i, j)) return out;  // forced cycle among inner nodes
      tree_value += penalized(i, j);
      out.edges.push_back(e);
      ++out.degree[static_cast<std::size_t>(i)];
      ++out.degree[static_cast<std::size_t>(j)];
      ++tree_edges;
    }
  }

  std::vector<std::pair<int, int>> cand;  // (edge, stable order); sorted by penalized cost
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int e = edge_index(i, j, n);
      if (state[static_cast<std::size_t>(e)] != 0) continue;
      if (!allowed(e, i, j)) continue;
      cand.emplace_back(e, 0);
    }
  }
  std::sort(cand.begin(), cand.end(), [&](const auto& a, const auto& b) {
    const auto [ai, aj] = edge_endpoints(a.first, n);
    const auto [bi, bj] = edge_endpoints(b.first, n);
    const CostT ca = penalized(ai, aj), cb = penalized(bi, bj);
    if (ca != cb) return ca < cb;
    return a.first < b.first;
  });
  for (auto [e, unused] : cand) {
    if (tree_edges == n - 2) break;
    const auto [i, j] = edge_endpoints(e, n);
    if (!dsu.unite(i, j)) continue;
    tree_value += penalized(i, j);
    out.edges.push_back(e);
    ++out.degree[static_cast<std::size_t>(i)];
    ++out.degree[static_cast<std::size_t>(j)];
    ++tree_edges;
  }
  if (tree_edges != n - 2) return out;  // exclusions disconnect the inner nodes

  // two edges at node 0: forced ones first, then cheapest allowed
  int at0 = 0;
  for (int j = 1; j < n; ++j) {
    const int e = edge_index(0, j, n);
    if (state[static_cast<std::size_t>(e)] == 1) {
      if (at0 == 2) return out;  // three forced edges at node 0
      tree_value += penalized(0, j);
      out.edges.push_back(e);
      ++out.degree[0];
      ++out.degree[static_cast<std::size_t>(j)];
      ++at0;
    }
  }
  if (at0 < 2) {
    std::vector<int> zero_cand;
    for (int j = 1; j < n; ++j) {
      const int e = edge_index(0, j, n);
      if (state[static_cast<std::size_t>(e)] != 0) continue;
      if (!allowed(e, 0, j)) continue;
      zero_cand.push_back(e);
    }
    std::sort(zero_cand.begin(), zero_cand.end(), [&](int a, int b) {
      const auto [ai, aj] = edge_endpoints(a, n);
      const auto [bi, bj] = edge_endpoints(b, n);
      const CostT ca = penalized(ai, aj), cb = penalized(bi, bj);
      if (ca != cb) return ca < cb;
      return a < b;
    });
    for (int e : zero_cand) {
      if (at0 == 2) break;
      const auto [i, j] = edge_endpoints(e, n);
      tree_value += penalized(i, j);
      out.edges.push_back(e);
      ++out.degree[static_cast<std::size_t>(i)];
      ++out.degree[static_cast<std::size_t>(j)];
      ++at0;
    }
  }
  if (at0 != 2) return out;

  CostT pi_sum = 0;
  for (CostT p : pi) pi_sum += p;
  out.bound = tree_value - 2 * pi_sum;
  out.feasible = true;
  out.is_tour = std::all_of(out.degree.begin(), out.degree.end(), [](int d) { return d == 2; });
  return out;
}

// Turns a degree-2 1-tree into the tour order.
std::vector<int> one_tree_to_order(int n, const std::vector<int>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int e : edges) {
    const auto [i, j] = edge_endpoints(e, n);
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  }
  std::vector<int> order{0};
  int prev = -1, cur = 0;
  while (static_cast<int>(order.size()) < n) {
    const int next = adj[static_cast<std::size_t>(cur)][0] == prev ? adj[static_cast<std::size_t>(cur)][1]
                                                                   : adj[static_cast<std::size_t>(cur)][0];
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

template <typename CostT>
struct AscentResult {
  OneTree<CostT> best_tree;
  std::vector<CostT> best_pi;
  bool feasible = false;
  std::optional<std::pair<std::vector<int>, CostT>> tour_found;  // order, true cost
};

// Subgradient ascent on the node penalties; keeps the best bound seen.
template <typename CostT>
AscentResult<CostT> subgradient_ascent(int n, const std::vector<CostT>& c,
                                       const std::vector<std::int8_t>& state,
                                       const std::vector<int>& forced_deg,
                                       std::vector<CostT> pi, int iters, CostT target) {
  AscentResult<CostT> res;
  res.best_pi = pi;
  double lambda = 2.0;
  int no_improve = 0;
  bool have_best = false;

  for (int it = 0; it < iters; ++it) {
    OneTree<CostT> tree = build_one_tree(n, c, state, forced_deg, pi);
    if (!tree.feasible) {
      if (!have_best) return res;  // node infeasible
      break;
    }
    if (!have_best || tree.bound > res.best_tree.bound) {
      res.best_tree = tree;
      res.best_pi = pi;
      have_best = true;
      no_improve = 0;
    } else if (++no_improve >= 3) {
      lambda *= 0.5;
      no_improve = 0;
    }
    if (tree.is_tour) {
      auto order = one_tree_to_order(n, tree.edges);
      CostT true_cost = 0;
      for (int t = 0; t < n; ++t) {
        true_cost += c[static_cast<std::size_t>(
            edge_index_u(order[static_cast<std::size_t>(t)], order[static_cast<std::size_t>((t + 1) % n)], n))];
      }
      if (!res.tour_found || true_cost < res.tour_found->second) res.tour_found = {order, true_cost};
      break;  // penalties cancel on tours: the bound is exact here
    }
    std::int64_t norm = 0;
    for (int v = 0; v < n; ++v) {
      const int g = tree.degree[static_cast<std::size_t>(v)] - 2;
      norm += static_cast<std::int64_t>(g) * g;
    }
    if (norm == 0) break;
    const double gap = static_cast<double>(target) - static_cast<double>(tree.bound);
    if (gap <= 0) break;  // bound already at the prune threshold
    const double step = lambda * gap / static_cast<double>(norm);
    for (int v = 0; v < n; ++v) {
      const int g = tree.degree[static_cast<std::size_t>(v)] - 2;
      if (g == 0) continue;
      if constexpr (std::is_same_v<CostT, double>) {
        pi[static_cast<std::size_t>(v)] += step * g;
      } else {
        const std::int64_t s = std::llround(step);
        pi[static_cast<std::size_t>(v)] += (s > 0 ? s : 1) * g;
      }
    }
  }
  res.feasible = have_best;
  return res;
}

// ---------------------------------------------------------------------------
// branch and bound
// ---------------------------------------------------------------------------

template <typename CostT>
double prune_slack(CostT threshold) {
  if constexpr (std::is_same_v<CostT, double>) {
    return 1e-9 * std::max(1.0, std::abs(static_cast<double>(threshold)));
  } else {
    (void)threshold;
    return 0.0;
  }
}

template <typename CostT>
TspResult branch_and_bound_impl(const TspInstance& inst, std::optional<CostT> cutoff,
                                const ExactOptions& opts) {
  const auto t0 = Clock::now();
  const int n = inst.n();
  const int m = inst.edge_count();
  const std::vector<CostT> costs = edge_costs<CostT>(inst);
  const CostT inf = cost_infinity<CostT>();

  TspResult warm = heuristic_tour(inst, opts.warm_restarts, opts.seed);
  Tour incumbent = warm.tour;
  CostT ub = exact_tour_cost<CostT>(inst, incumbent);

  std::int64_t explored = 0;
  bool hit_limit = false;

  auto finish = [&](bool proven) {
    TspResult res{incumbent, static_cast<double>(ub), proven, explored, elapsed_sec(t0), hit_limit};
    return res;
  };

  auto threshold = [&]() { return cutoff ? std::min(ub, *cutoff) : ub; };
  // Early-exit contract: any tour strictly below the cutoff ends the search.
  if (cutoff && ub < *cutoff) return finish(false);

  struct NodeRec {
    int parent;
    int edge;
    std::int8_t state;
    CostT bound;
    std::vector<CostT> pi;
  };
  struct QueueEntry {
    double key;
    std::int64_t seq;
    int node;
    bool operator>(const QueueEntry& o) const {
      if (key != o.key) return key > o.key;
      return seq > o.seq;
    }
  };

  std::vector<NodeRec> nodes;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> open;
  nodes.push_back(NodeRec{-1, -1, 0, static_cast<CostT>(0), std::vector<CostT>(static_cast<std::size_t>(n), 0)});
  std::int64_t seq = 0;
  open.push(QueueEntry{0.0, seq++, 0});

  std::vector<std::int8_t> state(static_cast<std::size_t>(m));
  std::vector<int> forced_deg(static_cast<std::size_t>(n));

  while (!open.empty()) {
    if (explored >= opts.limits.max_nodes || elapsed_sec(t0) > opts.limits.time_limit_sec) {
      hit_limit = true;
      break;
    }
    const QueueEntry qe = open.top();
    open.pop();
    NodeRec& nd = nodes[static_cast<std::size_t>(qe.node)];
    const CostT thr = threshold();
    if (static_cast<double>(nd.bound) >= static_cast<double>(thr) - prune_slack(thr)) continue;
    ++explored;

    // reconstruct the edge states along the path to the root
    std::fill(state.begin(), state.end(), 0);
    std::fill(forced_deg.begin(), forced_deg.end(), 0);
    for (int at = qe.node; at > 0; at = nodes[static_cast<std::size_t>(at)].parent) {
      const NodeRec& rec = nodes[static_cast<std::size_t>(at)];
      state[static_cast<std::size_t>(rec.edge)] = rec.state;
    }
    for (int e = 0; e < m; ++e) {
      if (state[static_cast<std::size_t>(e)] == 1) {
        const auto [i, j] = edge_endpoints(e, n);
        ++forced_deg[static_cast<std::size_t>(i)];
        ++forced_deg[static_cast<std::size_t>(j)];
      }
    }

    const int iters = qe.node == 0 ? opts.root_ascent_iters : opts.node_ascent_iters;
    AscentResult<CostT> ascent =
        subgradient_ascent<CostT>(n, costs, state, forced_deg, nd.pi, iters, thr);
    if (!ascent.feasible) continue;

    if (ascent.tour_found) {
      const CostT cand = ascent.tour_found->second;
      if (cand < ub) {
        ub = cand;
        incumbent = Tour(ascent.tour_found->first);
        if (cutoff && ub < *cutoff) return finish(false);
      }
    }

    const CostT bound = ascent.best_tree.bound;
    const CostT thr2 = threshold();
    if (static_cast<double>(bound) >= static_cast<double>(thr2) - prune_slack(thr2)) continue;
    if (ascent.best_tree.is_tour) continue;  // handled via tour_found above

    // branch on a 1-tree edge at the most overloaded node
    int branch_node = -1, best_deg = 2;
    for (int v = 0; v < n; ++v) {
      if (ascent.best_tree.degree[static_cast<std::size_t>(v)] > best_deg) {
        best_deg = ascent.best_tree.degree[static_cast<std::size_t>(v)];
        branch_node = v;
      }
    }
    if (branch_node < 0) continue;  // defensive; degree-2 everywhere means tour
    int branch_edge = -1;
    double branch_cost = -1.0;
    for (int e : ascent.best_tree.edges) {
      if (state[static_cast<std::size_t>(e)] != 0) continue;
      const auto [i, j] = edge_endpoints(e, n);
      if (i != branch_node && j != branch_node) continue;
      const double ce = static_cast<double>(costs[static_cast<std::size_t>(e)]) +
                        static_cast<double>(ascent.best_pi[static_cast<std::size_t>(i)]) +
                        static_cast<double>(ascent.best_pi[static_cast<std::size_t>(j)]);
      if (ce > branch_cost || (ce == branch_cost && (branch_edge < 0 || e < branch_edge))) {
        branch_cost = ce;
        branch_edge = e;
      }
    }
    if (branch_edge < 0) continue;  // all incident tree edges forced

    for (std::int8_t s : {std::int8_t{-1}, std::int8_t{1}}) {
      nodes.push_back(NodeRec{qe.node, branch_edge, s, bound, ascent.best_pi});
      open.push(QueueEntry{static_cast<double>(bound), seq++, static_cast<int>(nodes.size()) - 1});
    }
  }

  return finish(!hit_limit);
}

// ---------------------------------------------------------------------------
// local search heuristic
// ---------------------------------------------------------------------------

std::vector<int> nearest_neighbor(const TspInstance& inst, int start) {
  const int n = inst.n();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  order.push_back(start);
  used[static_cast<std::size_t>(start)] = 1;
  int cur = start;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    double best_c = 0.0;
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      const double c = inst.cost(cur, v);
      if (best < 0 || c < best_c) {
        best = v;
        best_c = c;
      }
    }
    order.push_back(best);
    used[static_cast<std::size_t>(best)] = 1;
    cur = best;
  }
  return order;
}

bool two_opt_pass(const TspInstance& inst, std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  bool improved = false;
  for (int i = 0; i < n - 1; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // full reversal is a no-op
      const int a = order[static_cast<std::size_t>(i == 0 ? n - 1 : i - 1)];
      const int b = order[static_cast<std::size_t>(i)];
      const int c = order[static_cast<std::size_t>(j)];
      const int d = order[static_cast<std::size_t>((j + 1) % n)];
      const double delta = inst.cost(a, c) + inst.cost(b, d) - inst.cost(a, b) - inst.cost(c, d);
      if (delta < -1e-12) {
        std::reverse(order.begin() + i, order.begin() + j + 1);
        improved = true;
      }
    }
  }
  return improved;
}

bool or_opt_pass(const TspInstance& inst, std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  bool improved = false;
  for (int len = 1; len <= 3 && len < n - 1; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      // segment order[i .. i+len-1]; try both orientations at every other slot
      const int prev = order[static_cast<std::size_t>((i + n - 1) % n)];
      const int segA = order[static_cast<std::size_t>(i)];
      const int segB = order[static_cast<std::size_t>(i + len - 1)];
      const int next = order[static_cast<std::size_t>((i + len) % n)];
      if (prev == segB || next == segA) continue;
      const double removed = inst.cost(prev, segA) + inst.cost(segB, next) - inst.cost(prev, next);
      double best_gain = -1e-12;
      int best_pos = -1;
      bool best_rev = false;
      for (int p = 0; p < n; ++p) {
        const int u = order[static_cast<std::size_t>(p)];
        const int v = order[static_cast<std::size_t>((p + 1) % n)];
        // slot (u,v) must lie outside the segment and not touch its boundary
        if (p >= i - 1 && p <= i + len - 1) continue;
        if (i == 0 && p == n - 1) continue;
        const double add_fwd = inst.cost(u, segA) + inst.cost(segB, v) - inst.cost(u, v);
        const double add_rev = inst.cost(u, segB) + inst.cost(segA, v) - inst.cost(u, v);
        const double gain_fwd = removed - add_fwd;
        const double gain_rev = removed - add_rev;
        if (gain_fwd > best_gain + 1e-12) {
          best_gain = gain_fwd;
          best_pos = p;
          best_rev = false;
        }
        if (gain_rev > best_gain + 1e-12) {
          best_gain = gain_rev;
          best_pos = p;
          best_rev = true;
        }
      }
      if (best_pos < 0 || best_gain <= 1e-12) continue;
      std::vector<int> seg(order.begin() + i, order.begin() + i + len);
      if (best_rev) std::reverse(seg.begin(), seg.end());
      std::vector<int> rest;
      rest.reserve(order.size() - seg.size());
      for (int p = 0; p < n; ++p) {
        if (p >= i && p < i + len) continue;
        rest.push_back(order[static_cast<std::size_t>(p)]);
      }
      // best_pos indexes the original order; find u in rest and insert after it
      const int u = order[static_cast<std::size_t>(best_pos)];
      std::vector<int> merged;
      merged.reserve(order.size());
      for (int v : rest) {
        merged.push_back(v);
        if (v == u) merged.insert(merged.end(), seg.begin(), seg.end());
      }
      order = std::move(merged);
      improved = true;
    }
  }
  return improved;
}

}  // namespace

TspResult held_karp_dp(const TspInstance& inst) {
  const auto t0 = Clock::now();
  const int n = inst.n();
  if (n > 20) throw std::invalid_argument("held_karp_dp: n exceeds the hard cap of 20");
  std::vector<int> order;
  double value;
  if (inst.is_integer()) {
    auto [ord, val] = held_karp_impl<std::int64_t>(n, inst.costs_i());
    order = std::move(ord);
    value = static_cast<double>(val);
  } else {
    auto [ord, val] = held_karp_impl<double>(n, inst.costs());
    order = std::move(ord);
    value = val;
  }
  return TspResult{Tour(std::move(order)), value, true, 1, elapsed_sec(t0), false};
}

double one_tree_bound(const TspInstance& inst, const std::vector<double>& penalties) {
  const int n = inst.n();
  if (static_cast<int>(penalties.size()) != n)
    throw std::invalid_argument("one_tree_bound: penalty vector size mismatch");
  std::vector<std::int8_t> state(static_cast<std::size_t>(inst.edge_count()), 0);
  std::vector<int> forced_deg(static_cast<std::size_t>(n), 0);
  OneTree<double> tree = build_one_tree<double>(n, inst.costs(), state, forced_deg, penalties);
  if (!tree.feasible) throw std::logic_error("one_tree_bound: complete graph 1-tree must exist");
  return tree.bound;
}

TspResult heuristic_tour(const TspInstance& inst, int restarts, std::uint64_t seed) {
  const auto t0 = Clock::now();
  const int n = inst.n();
  if (restarts < 1) restarts = 1;
  Rng rng(seed);
  std::vector<int> best_order;
  double best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> order = nearest_neighbor(inst, rng.uniform_int(n));
    bool improved = true;
    while (improved) {
      improved = false;
      if (two_opt_pass(inst, order)) improved = true;
      if (or_opt_pass(inst, order)) improved = true;
    }
    const double value = tour_cost(inst, Tour(order));
    if (value < best_value) {
      best_value = value;
      best_order = order;
    }
  }
  return TspResult{Tour(std::move(best_order)), best_value, false, 0, elapsed_sec(t0), false};
}

TspResult solve_exact(const TspInstance& inst, std::optional<double> cutoff,
                      const ExactOptions& opts) {
  const int n = inst.n();
  ExactMode mode = opts.mode;
  if (mode == ExactMode::kAuto) {
    mode = n <= opts.dp_threshold ? ExactMode::kDp : ExactMode::kBranchAndBound;
  }
  if (mode == ExactMode::kDp) {
    TspResult res = held_karp_dp(inst);  // throws beyond the memory cap
    return res;
  }
  if (inst.is_integer()) {
    std::optional<std::int64_t> c;
    if (cutoff && std::isfinite(*cutoff)) c = static_cast<std::int64_t>(std::llround(*cutoff));
    return branch_and_bound_impl<std::int64_t>(inst, c, opts);
  }
  std::optional<double> c;
  if (cutoff && std::isfinite(*cutoff)) c = *cutoff;
  return branch_and_bound_impl<double>(inst, c, opts);
}

}  // namespace hardtsp
