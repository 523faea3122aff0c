#include "hardtsp/harden.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "hardtsp/kernels.hpp"
#include "hardtsp/rng.hpp"

namespace hardtsp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_sec(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr double kIntegralityTol = 1e-6;

LpRow triangle_lp_row(const TriangleRow& t, int n) {
  LpRow row;
  row.sense = RowSense::kLe;
  row.rhs = 0.0;
  row.idx = {edge_index_u(t.i, t.j, n), edge_index_u(t.i, t.k, n), edge_index_u(t.j, t.k, n)};
  row.val = {1.0, -1.0, -1.0};
  return row;
}

LpRow tour_lp_row(const Tour& t, double delta) {
  LpRow row;
  row.sense = RowSense::kGe;
  row.rhs = delta;
  for (auto [i, j] : t.edges()) {
    row.idx.push_back(edge_index(i, j, t.n()));
    row.val.push_back(1.0);
  }
  return row;
}

// Objective coefficients from the vertex; clips the simplex noise below zero
// so the hardening LP starts dual feasible.
std::vector<double> vertex_objective(const SepSolution& xbar) {
  std::vector<double> obj = xbar.x.values;
  for (double& v : obj) v = std::max(v, 0.0);
  return obj;
}

// Vertices of the subtour polytope have small rational denominators (halves
// and thirds at these sizes). When every entry of xbar sits on such a
// lattice, xbar . c over integer c is a multiple of the lattice step, so
// node bounds can be lifted to the next lattice point. Returns 0 when no
// small denominator fits.
double objective_granularity(const std::vector<double>& obj) {
  for (double q : {1.0, 0.5, 1.0 / 3.0, 0.25, 0.2, 1.0 / 6.0}) {
    bool fits = true;
    for (double v : obj) {
      if (std::abs(v - std::round(v / q) * q) > 1e-7) {
        fits = false;
        break;
      }
    }
    if (fits) return q;
  }
  return 0.0;
}

TspInstance clamped_fractional(int n, const std::vector<double>& c, const std::string& name) {
  std::vector<double> costs = c;
  for (double& v : costs) v = std::max(v, 0.0);
  return TspInstance::fractional(n, std::move(costs), name);
}

std::vector<std::int64_t> round_to_integer(const std::vector<double>& c) {
  std::vector<std::int64_t> out;
  out.reserve(c.size());
  for (double v : c) out.push_back(std::llround(v));
  return out;
}

// Most violated integer triangle rows of an integer cost vector, exact
// arithmetic, same ordering contract as separate_triangles.
std::vector<TriangleRow> separate_triangles_exact(const std::vector<std::int64_t>& c, int n,
                                                  int k) {
  std::vector<std::pair<std::int64_t, TriangleRow>> viol;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::int64_t cij = c[static_cast<std::size_t>(edge_index(i, j, n))];
      for (int t = 0; t < n; ++t) {
        if (t == i || t == j) continue;
        const std::int64_t v = cij - c[static_cast<std::size_t>(edge_index_u(i, t, n))] -
                               c[static_cast<std::size_t>(edge_index_u(j, t, n))];
        if (v > 0) viol.push_back({v, TriangleRow{i, j, t}});
      }
    }
  }
  std::sort(viol.begin(), viol.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  if (static_cast<int>(viol.size()) > k) viol.resize(static_cast<std::size_t>(k));
  std::vector<TriangleRow> out;
  out.reserve(viol.size());
  for (const auto& [v, row] : viol) out.push_back(row);
  return out;
}

}  // namespace

const char* to_string(HardenStatus s) {
  switch (s) {
    case HardenStatus::kOptimal: return "optimal";
    case HardenStatus::kTimeLimit: return "time_limit";
    case HardenStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

bool CutPool::add_triangle(TriangleRow row) {
  if (row.i > row.j) std::swap(row.i, row.j);
  if (!triangle_keys_.insert(row).second) return false;
  triangles_.push_back(row);
  return true;
}

bool CutPool::add_tour(const Tour& tour, CutOrigin origin) {
  Tour canon = tour.canonical();  // Tour construction validates the permutation
  if (!tour_keys_.insert(canon.order()).second) return false;
  tours_.push_back(std::move(canon));
  origins_.push_back(origin);
  return true;
}

std::vector<TriangleRow> separate_triangles(const EdgeVector& c, int k, double tol) {
  if (k <= 0) return {};
  const std::vector<double> m = c.to_dense();
  std::vector<kernels::TriViol> raw;
  kernels::scan_triangle_violations(m.data(), c.n, tol, raw);
  std::sort(raw.begin(), raw.end(), [](const kernels::TriViol& a, const kernels::TriViol& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
  });
  if (static_cast<int>(raw.size()) > k) raw.resize(static_cast<std::size_t>(k));
  std::vector<TriangleRow> out;
  out.reserve(raw.size());
  for (const auto& r : raw) out.push_back(TriangleRow{r.i, r.j, r.k});
  return out;
}

namespace {

TourSeparation separate_tour_heuristic(const TspInstance& inst, double delta,
                                       const HardenConfig& cfg) {
  TourSeparation out;
  TspResult heur = heuristic_tour(inst, cfg.heuristic_restarts, cfg.seed);
  if (heur.value < delta - cfg.tour_tol) {
    out.tour = heur.tour;
    out.violation = delta - heur.value;
  }
  return out;
}

TourSeparation separate_tour_exact(const TspInstance& inst, double delta,
                                   const HardenConfig& cfg) {
  TourSeparation out;
  ExactOptions opts = cfg.exact;
  opts.seed = cfg.seed;
  TspResult exact = solve_exact(inst, delta - cfg.tour_tol, opts);
  if (exact.value < delta - cfg.tour_tol) {
    out.tour = exact.tour;
    out.found_by_exact = true;
    out.violation = delta - exact.value;
  } else if (exact.proven_optimal) {
    out.exact_certified = true;
  } else {
    out.timed_out = true;  // caller may not conclude "none"
  }
  return out;
}

}  // namespace

TourSeparation separate_tour(const EdgeVector& c, double delta, const HardenConfig& cfg) {
  TspInstance inst = clamped_fractional(c.n, c.values, "separation");
  TourSeparation out = separate_tour_heuristic(inst, delta, cfg);
  if (out.tour) return out;
  return separate_tour_exact(inst, delta, cfg);
}

// ---------------------------------------------------------------------------
// fractional hardening (cutting planes)
// ---------------------------------------------------------------------------

HardeningResult harden_fractional(const SepSolution& xbar, double delta, const HardenConfig& cfg) {
  const auto t0 = Clock::now();
  const int n = xbar.x.n;
  if (n < 3) throw std::invalid_argument("harden_fractional: n must be >= 3");
  if (!(delta > 0)) throw std::invalid_argument("harden_fractional: delta must be > 0");

  LinearProgram lp = LinearProgram::boxed(num_edges(n), 0.0, delta);
  lp.objective = vertex_objective(xbar);
  SimplexSolver solver(lp, cfg.lp);

  HardeningResult res{EdgeVector(n), TspInstance::uniform(n, delta / n, "hardened_lp"),
                      0, 0, kInf, HardenStatus::kTimeLimit, {}, {}, false};

  LpSolution sol = solver.solve();
  std::uint64_t sep_counter = 0;

  while (true) {
    if (sol.status != LpStatus::kOptimal)
      throw std::runtime_error(std::string("harden_fractional: LP failed: ") + to_string(sol.status));
    res.stats.lp_iterations += sol.iterations;
    if (elapsed_sec(t0) > cfg.time_limit_sec) {
      res.status = HardenStatus::kTimeLimit;
      res.lower_bound = sol.objective;  // relaxation of the full system
      res.upper_bound = kInf;
      break;
    }

    // triangle rows first
    const auto t_tri = Clock::now();
    EdgeVector c(n, sol.x);
    std::vector<TriangleRow> tri = separate_triangles(c, cfg.triangle_batch, cfg.triangle_tol);
    res.stats.separation_time_triangle += elapsed_sec(t_tri);
    std::vector<LpRow> rows;
    double worst = 0.0;
    for (const TriangleRow& t : tri) {
      if (res.cuts.add_triangle(t)) {
        rows.push_back(triangle_lp_row(t, n));
        worst = std::max(worst, c.at(t.i, t.j) - c.at(t.i, t.k) - c.at(t.j, t.k));
      }
    }
    if (!rows.empty()) {
      res.stats.triangle_rounds += 1;
      res.stats.triangle_rows += static_cast<int>(rows.size());
      res.stats.log.push_back({"triangle", worst, static_cast<int>(rows.size()), sol.objective, 0});
      solver.add_rows(rows);
      sol = solver.resolve();
      continue;
    }

    // then tour rows, heuristic before exact
    HardenConfig sep_cfg = cfg;
    sep_cfg.seed = Rng::derive_seed(cfg.seed, sep_counter++);
    const double remaining = cfg.time_limit_sec - elapsed_sec(t0);
    sep_cfg.exact.limits.time_limit_sec = std::min(sep_cfg.exact.limits.time_limit_sec, remaining);
    TspInstance frac_inst = clamped_fractional(n, sol.x, "separation");

    const auto t_heur = Clock::now();
    TourSeparation ts = separate_tour_heuristic(frac_inst, delta, sep_cfg);
    res.stats.separation_time_heuristic += elapsed_sec(t_heur);
    if (ts.tour && res.cuts.add_tour(*ts.tour, CutOrigin::kHeuristic)) {
      res.stats.tour_rows_heuristic += 1;
      res.stats.log.push_back({"tour_heuristic", ts.violation, 1, sol.objective, 0});
      solver.add_row(tour_lp_row(*ts.tour, delta));
      sol = solver.resolve();
      continue;
    }

    const auto t_exact = Clock::now();
    ts = separate_tour_exact(frac_inst, delta, sep_cfg);
    res.stats.separation_time_exact += elapsed_sec(t_exact);
    if (ts.tour) {
      if (!res.cuts.add_tour(*ts.tour, CutOrigin::kExact))
        throw std::runtime_error("harden_fractional: violated tour row was already pooled");
      res.stats.tour_rows_exact += 1;
      res.stats.log.push_back({"tour_exact", ts.violation, 1, sol.objective, 0});
      solver.add_row(tour_lp_row(*ts.tour, delta));
      sol = solver.resolve();
      continue;
    }
    if (ts.timed_out) {
      res.status = HardenStatus::kTimeLimit;
      res.lower_bound = sol.objective;
      res.upper_bound = kInf;
      res.stats.log.push_back({"tour_exact", 0.0, 0, sol.objective, 0});
      break;
    }
    // exact certificate: no violated row anywhere
    res.stats.log.push_back({"tour_exact", 0.0, 0, sol.objective, 0});
    res.status = HardenStatus::kOptimal;
    break;
  }

  EdgeVector costs(n, sol.x);
  for (double& v : costs.values) v = std::max(v, 0.0);
  res.costs = costs;
  res.instance = clamped_fractional(n, sol.x, "hardened_lp");
  res.objective = sol.objective;
  if (res.status == HardenStatus::kOptimal) {
    res.lower_bound = sol.objective;
    res.upper_bound = sol.objective;
  }
  res.box_bound_tight = std::any_of(costs.values.begin(), costs.values.end(),
                                    [&](double v) { return v >= delta - 1e-7; });
  return res;
}

// ---------------------------------------------------------------------------
// integer hardening (branch and cut)
// ---------------------------------------------------------------------------

namespace {

struct BcNode {
  int parent = -1;
  int var = -1;
  double lo = 0, hi = 0;
  double bound = 0;
};

struct BcQueueEntry {
  double bound;
  std::int64_t seq;
  int node;
  bool operator>(const BcQueueEntry& o) const {
    if (bound != o.bound) return bound > o.bound;
    return seq > o.seq;
  }
};

}  // namespace

HardeningResult harden_integer(const SepSolution& xbar, std::int64_t delta,
                               const HardenConfig& cfg, const CutPool* warm) {
  const auto t0 = Clock::now();
  const int n = xbar.x.n;
  const int m = num_edges(n);
  if (n < 3) throw std::invalid_argument("harden_integer: n must be >= 3");
  if (delta < 1) throw std::invalid_argument("harden_integer: delta must be >= 1");

  HardeningResult res{EdgeVector(n), TspInstance::uniform(n, 1.0, "hardened_ip"),
                      0, 0, kInf, HardenStatus::kTimeLimit, {}, {}, false};
  if (delta < n) {
    // below n the all-ones vector degenerates to the optimum; warn, not fail
    res.stats.log.push_back({"warning_delta_below_n", static_cast<double>(n - delta), 0, 0.0, 0});
  }

  LinearProgram lp = LinearProgram::boxed(m, 0.0, static_cast<double>(delta));
  lp.objective = vertex_objective(xbar);
  const double granularity = objective_granularity(lp.objective);
  if (granularity > 0) {
    // snap away the simplex noise so the lattice arithmetic below is exact
    for (double& v : lp.objective) v = std::round(v / granularity) * granularity;
  }
  const auto lift = [granularity](double bound) {
    if (granularity <= 0) return bound;
    return std::ceil(bound / granularity - 1e-6) * granularity;
  };
  SimplexSolver solver(lp, cfg.lp);

  // seed the row pool
  if (warm != nullptr) {
    std::vector<LpRow> rows;
    for (const TriangleRow& t : warm->triangles()) {
      if (res.cuts.add_triangle(t)) rows.push_back(triangle_lp_row(t, n));
    }
    for (std::size_t i = 0; i < warm->tours().size(); ++i) {
      if (res.cuts.add_tour(warm->tours()[i], CutOrigin::kWarm)) {
        rows.push_back(tour_lp_row(warm->tours()[i], static_cast<double>(delta)));
      }
    }
    solver.add_rows(rows);
  }

  std::vector<BcNode> nodes;
  nodes.push_back(BcNode{});  // root; bound 0 is valid since costs and xbar are nonnegative
  std::priority_queue<BcQueueEntry, std::vector<BcQueueEntry>, std::greater<BcQueueEntry>> open;
  std::int64_t seq = 0;
  open.push({0.0, seq++, 0});

  std::vector<std::int64_t> incumbent;
  double ub = kInf;
  std::int64_t explored = 0;
  bool out_of_time = false;
  std::uint64_t sep_counter = 0;

  // bounds currently applied to the solver, tracked to switch between nodes
  std::vector<int> touched_vars;

  auto apply_node_bounds = [&](int node_idx) {
    for (int v : touched_vars) solver.set_var_bounds(v, 0.0, static_cast<double>(delta));
    touched_vars.clear();
    for (int at = node_idx; at > 0; at = nodes[static_cast<std::size_t>(at)].parent) {
      const BcNode& nd = nodes[static_cast<std::size_t>(at)];
      // an ancestor may constrain the same variable; the deepest wins
      if (std::find(touched_vars.begin(), touched_vars.end(), nd.var) == touched_vars.end()) {
        solver.set_var_bounds(nd.var, nd.lo, nd.hi);
        touched_vars.push_back(nd.var);
      }
    }
  };

  while (!open.empty()) {
    if (elapsed_sec(t0) > cfg.time_limit_sec || explored >= cfg.max_bnb_nodes) {
      out_of_time = true;
      break;
    }
    const BcQueueEntry qe = open.top();
    open.pop();
    if (qe.bound >= ub - 1e-9) continue;
    ++explored;

    apply_node_bounds(qe.node);
    LpSolution sol = solver.resolve();

    bool node_done = false;
    int rounds = 0;
    while (!node_done) {
      if (++rounds > 1000)
        throw std::runtime_error("harden_integer: separation did not converge");
      if (sol.status == LpStatus::kInfeasible) {
        node_done = true;
        break;
      }
      if (sol.status != LpStatus::kOptimal)
        throw std::runtime_error(std::string("harden_integer: LP failed: ") + to_string(sol.status));
      res.stats.lp_iterations += sol.iterations;
      if (elapsed_sec(t0) > cfg.time_limit_sec) {
        out_of_time = true;
        nodes[static_cast<std::size_t>(qe.node)].bound = lift(sol.objective);
        open.push({lift(sol.objective), seq++, qe.node});  // keep it open for the bound report
        break;
      }

      // triangle separation on every LP solution, fractional or not
      const auto t_tri = Clock::now();
      EdgeVector c(n, sol.x);
      std::vector<TriangleRow> tri = separate_triangles(c, cfg.triangle_batch, cfg.triangle_tol);
      res.stats.separation_time_triangle += elapsed_sec(t_tri);
      std::vector<LpRow> rows;
      double worst = 0.0;
      for (const TriangleRow& t : tri) {
        if (res.cuts.add_triangle(t)) {
          rows.push_back(triangle_lp_row(t, n));
          worst = std::max(worst, c.at(t.i, t.j) - c.at(t.i, t.k) - c.at(t.j, t.k));
        }
      }
      if (!rows.empty()) {
        res.stats.triangle_rounds += 1;
        res.stats.triangle_rows += static_cast<int>(rows.size());
        res.stats.log.push_back({"triangle", worst, static_cast<int>(rows.size()), sol.objective, explored});
        solver.add_rows(rows);
        sol = solver.resolve();
        continue;
      }

      if (lift(sol.objective) >= ub - 1e-9) {
        node_done = true;
        break;
      }

      // integrality
      int frac_var = -1;
      double frac_score = kIntegralityTol;
      for (int e = 0; e < m; ++e) {
        const double v = sol.x[static_cast<std::size_t>(e)];
        const double dist = std::abs(v - std::round(v));
        if (dist > frac_score) {
          frac_score = dist;
          frac_var = e;
        }
      }
      if (frac_var >= 0) {
        // branch on the most fractional cost variable
        nodes[static_cast<std::size_t>(qe.node)].bound = lift(sol.objective);
        const double v = sol.x[static_cast<std::size_t>(frac_var)];
        double cur_lo = 0.0, cur_hi = static_cast<double>(delta);
        for (int at = qe.node; at > 0; at = nodes[static_cast<std::size_t>(at)].parent) {
          const BcNode& nd = nodes[static_cast<std::size_t>(at)];
          if (nd.var == frac_var) {
            cur_lo = nd.lo;
            cur_hi = nd.hi;
            break;
          }
        }
        const double child_bound = lift(sol.objective);
        nodes.push_back(BcNode{qe.node, frac_var, cur_lo, std::floor(v), child_bound});
        open.push({child_bound, seq++, static_cast<int>(nodes.size()) - 1});
        nodes.push_back(BcNode{qe.node, frac_var, std::ceil(v), cur_hi, child_bound});
        open.push({child_bound, seq++, static_cast<int>(nodes.size()) - 1});
        node_done = true;
        break;
      }

      // integral LP point: run the exact lazy checks on the rounded candidate
      std::vector<std::int64_t> cand = round_to_integer(sol.x);

      std::vector<TriangleRow> tri_exact = separate_triangles_exact(cand, n, cfg.triangle_batch);
      if (!tri_exact.empty()) {
        std::vector<LpRow> xrows;
        for (const TriangleRow& t : tri_exact) {
          if (res.cuts.add_triangle(t)) xrows.push_back(triangle_lp_row(t, n));
        }
        if (!xrows.empty()) {
          res.stats.triangle_rows += static_cast<int>(xrows.size());
          res.stats.log.push_back({"triangle", 0.0, static_cast<int>(xrows.size()), sol.objective, explored});
          solver.add_rows(xrows);
          sol = solver.resolve();
          continue;
        }
      }

      TspInstance cand_inst = TspInstance::integer(n, cand, "incumbent_check");
      const std::uint64_t sep_seed = Rng::derive_seed(cfg.seed, sep_counter++);

      const auto t_heur = Clock::now();
      TspResult heur = heuristic_tour(cand_inst, cfg.heuristic_restarts, sep_seed);
      res.stats.separation_time_heuristic += elapsed_sec(t_heur);
      if (tour_cost_i(cand_inst, heur.tour) < delta) {
        if (res.cuts.add_tour(heur.tour, CutOrigin::kHeuristic)) {
          res.stats.tour_rows_heuristic += 1;
          res.stats.log.push_back({"tour_heuristic",
                                   static_cast<double>(delta - tour_cost_i(cand_inst, heur.tour)), 1,
                                   sol.objective, explored});
          solver.add_row(tour_lp_row(heur.tour, static_cast<double>(delta)));
          sol = solver.resolve();
          continue;
        }
      }

      ExactOptions opts = cfg.exact;
      opts.seed = sep_seed;
      opts.limits.time_limit_sec =
          std::min(opts.limits.time_limit_sec, cfg.time_limit_sec - elapsed_sec(t0));
      const auto t_exact = Clock::now();
      TspResult exact = solve_exact(cand_inst, static_cast<double>(delta), opts);
      res.stats.separation_time_exact += elapsed_sec(t_exact);
      const std::int64_t exact_cost = tour_cost_i(cand_inst, exact.tour);
      if (exact_cost < delta) {
        res.stats.tour_rows_exact += 1;
        res.stats.log.push_back({"tour_exact", static_cast<double>(delta - exact_cost), 1,
                                 sol.objective, explored});
        if (!res.cuts.add_tour(exact.tour, CutOrigin::kExact))
          throw std::runtime_error("harden_integer: violated tour row was already pooled");
        solver.add_row(tour_lp_row(exact.tour, static_cast<double>(delta)));
        sol = solver.resolve();
        continue;
      }
      if (!exact.proven_optimal) {
        out_of_time = true;  // cannot certify the candidate
        nodes[static_cast<std::size_t>(qe.node)].bound = lift(sol.objective);
        open.push({lift(sol.objective), seq++, qe.node});
        break;
      }

      // candidate is feasible: metric and min tour >= delta both certified
      res.stats.log.push_back({"tour_exact", 0.0, 0, sol.objective, explored});
      if (sol.objective < ub - 1e-9) {
        ub = sol.objective;
        incumbent = std::move(cand);
      }
      node_done = true;
    }
    if (out_of_time) break;
  }

  res.stats.bnb_nodes = explored;

  double best_open = kInf;
  while (!open.empty()) {
    best_open = std::min(best_open, std::max(open.top().bound,
                                             nodes[static_cast<std::size_t>(open.top().node)].bound));
    open.pop();
  }

  if (incumbent.empty()) {
    res.status = out_of_time ? HardenStatus::kTimeLimit : HardenStatus::kInfeasible;
    res.lower_bound = out_of_time ? std::min(best_open, ub) : 0.0;
    res.upper_bound = kInf;
    return res;
  }

  res.instance = TspInstance::integer(n, incumbent, "hardened_ip");
  res.costs = res.instance.cost_vector();
  res.objective = ub;
  res.upper_bound = ub;
  if (out_of_time) {
    res.status = HardenStatus::kTimeLimit;
    res.lower_bound = std::min(best_open, ub);
  } else {
    res.status = HardenStatus::kOptimal;
    res.lower_bound = ub;
  }
  res.box_bound_tight = std::any_of(res.instance.costs_i().begin(), res.instance.costs_i().end(),
                                    [&](std::int64_t v) { return v >= delta; });
  return res;
}

CutPool warm_pool(const HardeningResult& hopt, double tau) {
  CutPool pool;
  for (std::size_t i = 0; i < hopt.cuts.tours().size(); ++i) {
    pool.add_tour(hopt.cuts.tours()[i], CutOrigin::kWarm);
  }
  const int n = hopt.costs.n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double cij = hopt.costs.at(i, j);
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double slack = hopt.costs.at(i, k) + hopt.costs.at(j, k) - cij;
        if (slack <= tau) pool.add_triangle(TriangleRow{i, j, k});
      }
    }
  }
  return pool;
}

}  // namespace hardtsp
