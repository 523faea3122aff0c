#include "hardtsp/lp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "hardtsp/kernels.hpp"

namespace hardtsp {

LinearProgram LinearProgram::boxed(int num_vars, double lo, double hi) {
  LinearProgram lp;
  lp.num_vars = num_vars;
  lp.objective.assign(static_cast<std::size_t>(num_vars), 0.0);
  lp.lower.assign(static_cast<std::size_t>(num_vars), lo);
  lp.upper.assign(static_cast<std::size_t>(num_vars), hi);
  return lp;
}

void LinearProgram::validate() const {
  if (num_vars < 0) throw std::invalid_argument("LinearProgram: negative num_vars");
  const auto nv = static_cast<std::size_t>(num_vars);
  if (objective.size() != nv || lower.size() != nv || upper.size() != nv)
    throw std::invalid_argument("LinearProgram: objective/bounds size mismatch");
  for (std::size_t v = 0; v < nv; ++v) {
    if (lower[v] > upper[v]) throw std::invalid_argument("LinearProgram: lower > upper");
  }
  for (const LpRow& row : rows) {
    if (row.idx.size() != row.val.size())
      throw std::invalid_argument("LinearProgram: row idx/val size mismatch");
    for (int j : row.idx) {
      if (j < 0 || j >= num_vars) throw std::invalid_argument("LinearProgram: row index out of range");
    }
    for (double a : row.val) {
      if (!std::isfinite(a)) throw std::invalid_argument("LinearProgram: non-finite coefficient");
    }
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("LinearProgram: non-finite rhs");
  }
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kSingular: return "singular";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kDegenerateStep = 1e-10;

}  // namespace

struct SimplexSolver::Impl {
  LinearProgram lp;
  SimplexConfig cfg;

  // sparse columns of the structural variables (row, coef)
  std::vector<std::vector<std::pair<int, double>>> cols;

  std::vector<VarStatus> status;  // structural then logical
  std::vector<int> basic;         // var index per basis position
  std::vector<int> basis_pos;     // var -> basis position or -1
  std::vector<double> x;          // all variables
  std::vector<double> binv;       // m*m, row-major
  bool basis_valid = false;

  // scratch
  std::vector<double> w, y, d, rhs_work;
  std::vector<double> sigma;  // phase-1 costs per basis position

  int iterations = 0;
  int phase1_iterations = 0;
  int pivots_since_refactor = 0;
  int degenerate_streak = 0;

  explicit Impl(LinearProgram lp_in, SimplexConfig cfg_in)
      : lp(std::move(lp_in)), cfg(cfg_in) {
    lp.validate();
    cols.resize(static_cast<std::size_t>(lp.num_vars));
    for (int r = 0; r < static_cast<int>(lp.rows.size()); ++r) index_row(r);
  }

  int ns() const { return lp.num_vars; }
  int m() const { return static_cast<int>(lp.rows.size()); }
  int nv() const { return ns() + m(); }

  void index_row(int r) {
    const LpRow& row = lp.rows[static_cast<std::size_t>(r)];
    for (std::size_t t = 0; t < row.idx.size(); ++t) {
      cols[static_cast<std::size_t>(row.idx[t])].emplace_back(r, row.val[t]);
    }
  }

  double lower_of(int v) const {
    if (v < ns()) return lp.lower[static_cast<std::size_t>(v)];
    switch (lp.rows[static_cast<std::size_t>(v - ns())].sense) {
      case RowSense::kLe: return 0.0;
      case RowSense::kEq: return 0.0;
      case RowSense::kGe: return -kInf;
    }
    return 0.0;
  }

  double upper_of(int v) const {
    if (v < ns()) return lp.upper[static_cast<std::size_t>(v)];
    switch (lp.rows[static_cast<std::size_t>(v - ns())].sense) {
      case RowSense::kLe: return kInf;
      case RowSense::kEq: return 0.0;
      case RowSense::kGe: return 0.0;
    }
    return 0.0;
  }

  double cost_of(int v) const {
    return v < ns() ? lp.objective[static_cast<std::size_t>(v)] : 0.0;
  }

  // ---- basis / factorization -------------------------------------------

  void init_logical_basis() {
    status.assign(static_cast<std::size_t>(nv()), VarStatus::kAtLower);
    for (int v = 0; v < ns(); ++v) {
      if (std::isfinite(lower_of(v))) {
        status[static_cast<std::size_t>(v)] = VarStatus::kAtLower;
      } else if (std::isfinite(upper_of(v))) {
        status[static_cast<std::size_t>(v)] = VarStatus::kAtUpper;
      } else {
        status[static_cast<std::size_t>(v)] = VarStatus::kFree;
      }
    }
    basic.resize(static_cast<std::size_t>(m()));
    basis_pos.assign(static_cast<std::size_t>(nv()), -1);
    for (int r = 0; r < m(); ++r) {
      const int v = ns() + r;
      basic[static_cast<std::size_t>(r)] = v;
      status[static_cast<std::size_t>(v)] = VarStatus::kBasic;
      basis_pos[static_cast<std::size_t>(v)] = r;
    }
    binv.assign(static_cast<std::size_t>(m()) * m(), 0.0);
    for (int r = 0; r < m(); ++r) binv[static_cast<std::size_t>(r) * m() + r] = 1.0;
    basis_valid = true;
    pivots_since_refactor = 0;
    compute_x();
  }

  double nonbasic_value(int v) const {
    switch (status[static_cast<std::size_t>(v)]) {
      case VarStatus::kAtLower: return lower_of(v);
      case VarStatus::kAtUpper: return upper_of(v);
      case VarStatus::kFree: return 0.0;
      case VarStatus::kBasic: break;
    }
    return 0.0;
  }

  void compute_x() {
    x.assign(static_cast<std::size_t>(nv()), 0.0);
    rhs_work.assign(static_cast<std::size_t>(m()), 0.0);
    for (int r = 0; r < m(); ++r) rhs_work[static_cast<std::size_t>(r)] = lp.rows[static_cast<std::size_t>(r)].rhs;
    for (int v = 0; v < nv(); ++v) {
      if (status[static_cast<std::size_t>(v)] == VarStatus::kBasic) continue;
      const double xv = nonbasic_value(v);
      x[static_cast<std::size_t>(v)] = xv;
      if (xv == 0.0) continue;
      if (v < ns()) {
        for (auto [r, a] : cols[static_cast<std::size_t>(v)]) rhs_work[static_cast<std::size_t>(r)] -= a * xv;
      } else {
        rhs_work[static_cast<std::size_t>(v - ns())] -= xv;
      }
    }
    for (int t = 0; t < m(); ++t) {
      x[static_cast<std::size_t>(basic[static_cast<std::size_t>(t)])] =
          kernels::dot(&binv[static_cast<std::size_t>(t) * m()], rhs_work.data(),
                       static_cast<std::size_t>(m()));
    }
  }

  // Rebuilds binv from the basic columns. Returns false when the basis matrix
  // is numerically singular.
  bool refactor() {
    const int mm = m();
    std::vector<double> a(static_cast<std::size_t>(mm) * mm, 0.0);
    for (int t = 0; t < mm; ++t) {
      const int v = basic[static_cast<std::size_t>(t)];
      if (v < ns()) {
        for (auto [r, coef] : cols[static_cast<std::size_t>(v)]) a[static_cast<std::size_t>(r) * mm + t] = coef;
      } else {
        a[static_cast<std::size_t>(v - ns()) * mm + t] = 1.0;
      }
    }
    binv.assign(static_cast<std::size_t>(mm) * mm, 0.0);
    for (int r = 0; r < mm; ++r) binv[static_cast<std::size_t>(r) * mm + r] = 1.0;
    // Gauss-Jordan with partial pivoting on [A | I]
    for (int colv = 0; colv < mm; ++colv) {
      int piv = -1;
      double best = 1e-11;
      for (int r = colv; r < mm; ++r) {
        const double v = std::abs(a[static_cast<std::size_t>(r) * mm + colv]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) return false;
      if (piv != colv) {
        for (int c = 0; c < mm; ++c) {
          std::swap(a[static_cast<std::size_t>(piv) * mm + c], a[static_cast<std::size_t>(colv) * mm + c]);
          std::swap(binv[static_cast<std::size_t>(piv) * mm + c], binv[static_cast<std::size_t>(colv) * mm + c]);
        }
      }
      const double inv = 1.0 / a[static_cast<std::size_t>(colv) * mm + colv];
      for (int c = 0; c < mm; ++c) {
        a[static_cast<std::size_t>(colv) * mm + c] *= inv;
        binv[static_cast<std::size_t>(colv) * mm + c] *= inv;
      }
      for (int r = 0; r < mm; ++r) {
        if (r == colv) continue;
        const double f = a[static_cast<std::size_t>(r) * mm + colv];
        if (f == 0.0) continue;
        kernels::axpy(-f, &a[static_cast<std::size_t>(colv) * mm], &a[static_cast<std::size_t>(r) * mm],
                      static_cast<std::size_t>(mm));
        kernels::axpy(-f, &binv[static_cast<std::size_t>(colv) * mm], &binv[static_cast<std::size_t>(r) * mm],
                      static_cast<std::size_t>(mm));
      }
    }
    pivots_since_refactor = 0;
    return true;
  }

  // w = B^-1 A_q
  void ftran(int q, std::vector<double>& out) {
    const int mm = m();
    out.assign(static_cast<std::size_t>(mm), 0.0);
    if (q < ns()) {
      const auto& col = cols[static_cast<std::size_t>(q)];
      for (int t = 0; t < mm; ++t) {
        const double* row = &binv[static_cast<std::size_t>(t) * mm];
        double s = 0.0;
        for (auto [r, a] : col) s += a * row[r];
        out[static_cast<std::size_t>(t)] = s;
      }
    } else {
      const int r = q - ns();
      for (int t = 0; t < mm; ++t) out[static_cast<std::size_t>(t)] = binv[static_cast<std::size_t>(t) * mm + r];
    }
  }

  // y = costs_B^T B^-1, with per-basis-position costs
  void compute_y_from_basis_costs(const std::vector<double>& cb, std::vector<double>& out) {
    const int mm = m();
    out.assign(static_cast<std::size_t>(mm), 0.0);
    for (int t = 0; t < mm; ++t) {
      const double c = cb[static_cast<std::size_t>(t)];
      if (c == 0.0) continue;
      kernels::axpy(c, &binv[static_cast<std::size_t>(t) * mm], out.data(), static_cast<std::size_t>(mm));
    }
  }

  double dual_activity(int v, const std::vector<double>& yv) const {
    if (v < ns()) {
      double s = 0.0;
      for (auto [r, a] : cols[static_cast<std::size_t>(v)]) s += yv[static_cast<std::size_t>(r)] * a;
      return s;
    }
    return yv[static_cast<std::size_t>(v - ns())];
  }

  // In-place basis change: q enters at basis position t_pos, the variable
  // there leaves with the given nonbasic status. w = B^-1 A_q must be valid.
  bool pivot_update(int t_pos, int q, const std::vector<double>& w_vec, VarStatus leave_status) {
    const int mm = m();
    const double piv = w_vec[static_cast<std::size_t>(t_pos)];
    if (std::abs(piv) < cfg.tol_pivot) return false;
    double* prow = &binv[static_cast<std::size_t>(t_pos) * mm];
    const double inv = 1.0 / piv;
    for (int c = 0; c < mm; ++c) prow[c] *= inv;
    for (int t = 0; t < mm; ++t) {
      if (t == t_pos) continue;
      const double f = w_vec[static_cast<std::size_t>(t)];
      if (f == 0.0) continue;
      kernels::axpy(-f, prow, &binv[static_cast<std::size_t>(t) * mm], static_cast<std::size_t>(mm));
    }
    const int leaving = basic[static_cast<std::size_t>(t_pos)];
    status[static_cast<std::size_t>(leaving)] = leave_status;
    basis_pos[static_cast<std::size_t>(leaving)] = -1;
    basic[static_cast<std::size_t>(t_pos)] = q;
    status[static_cast<std::size_t>(q)] = VarStatus::kBasic;
    basis_pos[static_cast<std::size_t>(q)] = t_pos;
    ++pivots_since_refactor;
    return true;
  }

  void maybe_refactor() {
    if (pivots_since_refactor >= cfg.refactor_period) {
      if (!refactor()) init_logical_basis();
      compute_x();
    }
  }

  // ---- reduced costs -----------------------------------------------------

  // Fills d for every variable (basic entries zeroed) from phase-2 costs.
  void compute_reduced_costs(std::vector<double>& out) {
    std::vector<double> cb(static_cast<std::size_t>(m()));
    for (int t = 0; t < m(); ++t) cb[static_cast<std::size_t>(t)] = cost_of(basic[static_cast<std::size_t>(t)]);
    compute_y_from_basis_costs(cb, y);
    out.assign(static_cast<std::size_t>(nv()), 0.0);
    for (int v = 0; v < nv(); ++v) {
      if (status[static_cast<std::size_t>(v)] == VarStatus::kBasic) continue;
      out[static_cast<std::size_t>(v)] = cost_of(v) - dual_activity(v, y);
    }
  }

  bool dual_feasible(const std::vector<double>& dv, double tol) const {
    for (int v = 0; v < nv(); ++v) {
      switch (status[static_cast<std::size_t>(v)]) {
        case VarStatus::kBasic: break;
        case VarStatus::kAtLower:
          if (dv[static_cast<std::size_t>(v)] < -tol) return false;
          break;
        case VarStatus::kAtUpper:
          if (dv[static_cast<std::size_t>(v)] > tol) return false;
          break;
        case VarStatus::kFree:
          if (std::abs(dv[static_cast<std::size_t>(v)]) > tol) return false;
          break;
      }
    }
    return true;
  }

  // ---- primal simplex ------------------------------------------------------

  // phase1: minimize total bound violation of the basics; phase2: minimize cost.
  LpStatus primal(int phase, const SimplexLimits& limits, const Clock::time_point& deadline) {
    const int mm = m();
    degenerate_streak = 0;
    while (true) {
      if (iterations >= limits.max_iterations) return LpStatus::kIterationLimit;
      if ((iterations & 63) == 0 && Clock::now() > deadline) return LpStatus::kIterationLimit;

      double total_inf = 0.0;
      if (phase == 1) {
        sigma.assign(static_cast<std::size_t>(mm), 0.0);
        for (int t = 0; t < mm; ++t) {
          const int v = basic[static_cast<std::size_t>(t)];
          const double xv = x[static_cast<std::size_t>(v)];
          const double lv = lower_of(v), uv = upper_of(v);
          if (xv < lv - cfg.tol_feas) {
            sigma[static_cast<std::size_t>(t)] = -1.0;
            total_inf += lv - xv;
          } else if (xv > uv + cfg.tol_feas) {
            sigma[static_cast<std::size_t>(t)] = 1.0;
            total_inf += xv - uv;
          }
        }
        if (total_inf == 0.0) return LpStatus::kOptimal;  // phase-1 done
        compute_y_from_basis_costs(sigma, y);
        d.assign(static_cast<std::size_t>(nv()), 0.0);
        for (int v = 0; v < nv(); ++v) {
          if (status[static_cast<std::size_t>(v)] == VarStatus::kBasic) continue;
          d[static_cast<std::size_t>(v)] = -dual_activity(v, y);
        }
      } else {
        compute_reduced_costs(d);
      }

      const bool bland = degenerate_streak >= cfg.bland_trigger;
      int q = -1;
      double best_score = cfg.tol_opt;
      int dir = +1;
      for (int v = 0; v < nv(); ++v) {
        const VarStatus st = status[static_cast<std::size_t>(v)];
        if (st == VarStatus::kBasic) continue;
        const double dv = d[static_cast<std::size_t>(v)];
        double score = 0.0;
        int vdir = 0;
        if (st == VarStatus::kAtLower && dv < -cfg.tol_opt) {
          score = -dv;
          vdir = +1;
        } else if (st == VarStatus::kAtUpper && dv > cfg.tol_opt) {
          score = dv;
          vdir = -1;
        } else if (st == VarStatus::kFree && std::abs(dv) > cfg.tol_opt) {
          score = std::abs(dv);
          vdir = dv < 0 ? +1 : -1;
        } else {
          continue;
        }
        if (bland) {
          q = v;
          dir = vdir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          q = v;
          dir = vdir;
        }
      }
      if (q < 0) {
        if (phase == 1) return LpStatus::kInfeasible;  // positive infeasibility, no direction
        return LpStatus::kOptimal;
      }

      ftran(q, w);

      // ratio test
      double theta = kInf;
      int t_block = -1;          // -1: entering hits its own opposite bound
      VarStatus block_status = VarStatus::kAtLower;
      {
        const double range = upper_of(q) - lower_of(q);
        if (std::isfinite(range)) theta = range;
      }
      double best_piv = 0.0;
      for (int t = 0; t < mm; ++t) {
        const double wt = w[static_cast<std::size_t>(t)];
        if (std::abs(wt) < cfg.tol_pivot) continue;
        const double rate = -dir * wt;  // dx_basic/dtheta
        const int v = basic[static_cast<std::size_t>(t)];
        const double xv = x[static_cast<std::size_t>(v)];
        const double lv = lower_of(v), uv = upper_of(v);
        double cand = kInf;
        VarStatus target = VarStatus::kAtLower;
        if (phase == 1 && xv < lv - cfg.tol_feas) {
          if (rate > 0.0) {
            cand = (lv - xv) / rate;
            target = VarStatus::kAtLower;
          }
        } else if (phase == 1 && xv > uv + cfg.tol_feas) {
          if (rate < 0.0) {
            cand = (uv - xv) / rate;
            target = VarStatus::kAtUpper;
          }
        } else if (rate > 0.0) {
          if (std::isfinite(uv)) {
            cand = (uv - xv) / rate;
            target = VarStatus::kAtUpper;
          }
        } else {
          if (std::isfinite(lv)) {
            cand = (lv - xv) / rate;
            target = VarStatus::kAtLower;
          }
        }
        if (cand == kInf) continue;
        cand = std::max(cand, 0.0);
        const bool better = bland
            ? (cand < theta - 1e-12 || (cand <= theta + 1e-12 && (t_block < 0 || v < basic[static_cast<std::size_t>(t_block)])))
            : (cand < theta - 1e-12 || (cand <= theta + 1e-12 && std::abs(wt) > best_piv));
        if (better) {
          theta = std::min(theta, cand);
          t_block = t;
          block_status = target;
          best_piv = std::abs(wt);
        }
      }

      if (theta == kInf) {
        return phase == 1 ? LpStatus::kInfeasible : LpStatus::kUnbounded;
      }

      ++iterations;
      if (phase == 1) ++phase1_iterations;
      degenerate_streak = theta <= kDegenerateStep ? degenerate_streak + 1 : 0;

      const double step = dir * theta;
      if (t_block < 0) {
        // bound flip of the entering variable
        x[static_cast<std::size_t>(q)] += step;
        for (int t = 0; t < mm; ++t) {
          x[static_cast<std::size_t>(basic[static_cast<std::size_t>(t)])] -= step * w[static_cast<std::size_t>(t)];
        }
        status[static_cast<std::size_t>(q)] =
            status[static_cast<std::size_t>(q)] == VarStatus::kAtLower ? VarStatus::kAtUpper : VarStatus::kAtLower;
        continue;
      }

      const int leaving = basic[static_cast<std::size_t>(t_block)];
      x[static_cast<std::size_t>(q)] += step;
      for (int t = 0; t < mm; ++t) {
        x[static_cast<std::size_t>(basic[static_cast<std::size_t>(t)])] -= step * w[static_cast<std::size_t>(t)];
      }
      x[static_cast<std::size_t>(leaving)] =
          block_status == VarStatus::kAtLower ? lower_of(leaving) : upper_of(leaving);
      if (!pivot_update(t_block, q, w, block_status)) {
        if (!refactor()) return LpStatus::kSingular;
        compute_x();
        continue;
      }
      maybe_refactor();
    }
  }

  // ---- dual simplex --------------------------------------------------------

  LpStatus dual(const SimplexLimits& limits, const Clock::time_point& deadline) {
    const int mm = m();
    degenerate_streak = 0;
    while (true) {
      if (iterations >= limits.max_iterations) return LpStatus::kIterationLimit;
      if ((iterations & 63) == 0 && Clock::now() > deadline) return LpStatus::kIterationLimit;

      const bool bland = degenerate_streak >= cfg.bland_trigger;

      // leaving variable: largest primal bound violation
      int t_leave = -1;
      double best_viol = cfg.tol_feas;
      bool below = false;
      for (int t = 0; t < mm; ++t) {
        const int v = basic[static_cast<std::size_t>(t)];
        const double xv = x[static_cast<std::size_t>(v)];
        const double lv = lower_of(v), uv = upper_of(v);
        double viol = 0.0;
        bool b = false;
        if (xv < lv - cfg.tol_feas) {
          viol = lv - xv;
          b = true;
        } else if (xv > uv + cfg.tol_feas) {
          viol = xv - uv;
        } else {
          continue;
        }
        if (bland) {
          if (t_leave < 0 || v < basic[static_cast<std::size_t>(t_leave)]) {
            t_leave = t;
            below = b;
            best_viol = viol;
          }
        } else if (viol > best_viol) {
          best_viol = viol;
          t_leave = t;
          below = b;
        }
      }
      if (t_leave < 0) return LpStatus::kOptimal;

      compute_reduced_costs(d);
      const double* rho = &binv[static_cast<std::size_t>(t_leave) * mm];

      int q = -1;
      double best_ratio = kInf;
      double best_alpha = 0.0;
      for (int v = 0; v < nv(); ++v) {
        const VarStatus st = status[static_cast<std::size_t>(v)];
        if (st == VarStatus::kBasic) continue;
        double alpha;
        if (v < ns()) {
          alpha = 0.0;
          for (auto [r, a] : cols[static_cast<std::size_t>(v)]) alpha += rho[r] * a;
        } else {
          alpha = rho[v - ns()];
        }
        if (std::abs(alpha) < cfg.tol_pivot) continue;
        // x_r must increase when below its lower bound, decrease when above
        // its upper bound; dx_r/dx_v = -alpha.
        bool eligible = false;
        if (below) {
          eligible = (st == VarStatus::kAtLower && alpha < 0.0) ||
                     (st == VarStatus::kAtUpper && alpha > 0.0) || st == VarStatus::kFree;
        } else {
          eligible = (st == VarStatus::kAtLower && alpha > 0.0) ||
                     (st == VarStatus::kAtUpper && alpha < 0.0) || st == VarStatus::kFree;
        }
        if (!eligible) continue;
        const double ratio = std::max(0.0, std::abs(d[static_cast<std::size_t>(v)] / alpha));
        bool take = false;
        if (q < 0 || ratio < best_ratio - 1e-12) {
          take = true;
        } else if (ratio <= best_ratio + 1e-12) {
          take = bland ? (v < q) : (std::abs(alpha) > std::abs(best_alpha));
        }
        if (take) {
          q = v;
          best_ratio = std::min(best_ratio, ratio);
          best_alpha = alpha;
        }
      }
      if (q < 0) return LpStatus::kInfeasible;

      ftran(q, w);
      const double piv = w[static_cast<std::size_t>(t_leave)];
      if (std::abs(piv) < cfg.tol_pivot) {
        if (!refactor()) return LpStatus::kSingular;
        compute_x();
        continue;
      }

      const int leaving = basic[static_cast<std::size_t>(t_leave)];
      const double bound = below ? lower_of(leaving) : upper_of(leaving);
      const double delta = (x[static_cast<std::size_t>(leaving)] - bound) / piv;

      ++iterations;
      degenerate_streak = std::abs(delta) <= kDegenerateStep ? degenerate_streak + 1 : 0;

      x[static_cast<std::size_t>(q)] += delta;
      for (int t = 0; t < mm; ++t) {
        x[static_cast<std::size_t>(basic[static_cast<std::size_t>(t)])] -= delta * w[static_cast<std::size_t>(t)];
      }
      x[static_cast<std::size_t>(leaving)] = bound;
      if (!pivot_update(t_leave, q, w, below ? VarStatus::kAtLower : VarStatus::kAtUpper)) {
        if (!refactor()) return LpStatus::kSingular;
        compute_x();
        continue;
      }
      maybe_refactor();
    }
  }

  // ---- drivers -------------------------------------------------------------

  LpSolution run(bool warm, const SimplexLimits& limits) {
    const auto deadline = std::isfinite(limits.time_limit_sec)
        ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
              std::chrono::duration<double>(limits.time_limit_sec))
        : Clock::time_point::max();
    iterations = 0;
    phase1_iterations = 0;

    if (!basis_valid) {
      init_logical_basis();
    } else if (warm) {
      // binv is kept consistent by pivot updates and row additions; a fresh
      // x is enough here, periodic refactoring happens while pivoting.
      compute_x();
    }

    LpStatus st;
    compute_reduced_costs(d);
    if (dual_feasible(d, 10.0 * cfg.tol_opt)) {
      st = dual(limits, deadline);
      // A dual-simplex optimum is both primal and dual feasible; nothing else
      // to do. Other statuses fall through.
    } else {
      st = primal(1, limits, deadline);
      if (st == LpStatus::kOptimal) st = primal(2, limits, deadline);
    }
    return make_solution(st);
  }

  LpSolution make_solution(LpStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = iterations;
    sol.phase1_iterations = phase1_iterations;
    sol.x.assign(x.begin(), x.begin() + ns());
    sol.objective = kernels::dot(lp.objective.data(), sol.x.data(), sol.x.size());
    sol.row_activity.assign(static_cast<std::size_t>(m()), 0.0);
    for (int r = 0; r < m(); ++r) {
      const LpRow& row = lp.rows[static_cast<std::size_t>(r)];
      double s = 0.0;
      for (std::size_t t = 0; t < row.idx.size(); ++t) {
        s += row.val[t] * x[static_cast<std::size_t>(row.idx[t])];
      }
      sol.row_activity[static_cast<std::size_t>(r)] = s;
    }
    sol.basic_vars = basic;
    sol.var_status = status;
    return sol;
  }

  void add_rows_impl(std::span<const LpRow> rows) {
    const int m_old = m();
    const int k = static_cast<int>(rows.size());
    if (k == 0) return;

    // Grow the program. Logical variable indices stay stable: structural
    // count is fixed and logical r keeps index ns + r.
    for (const LpRow& row : rows) {
      lp.rows.push_back(row);
      index_row(m() - 1);
    }
    lp.validate();

    if (!basis_valid) return;

    const int mm = m();
    std::vector<double> grown(static_cast<std::size_t>(mm) * mm, 0.0);
    for (int r = 0; r < m_old; ++r) {
      std::memcpy(&grown[static_cast<std::size_t>(r) * mm], &binv[static_cast<std::size_t>(r) * m_old],
                  sizeof(double) * static_cast<std::size_t>(m_old));
    }
    // new basis rows: -a_B^T B^-1 in the old block, identity in the new block
    for (int i = 0; i < k; ++i) {
      double* out = &grown[static_cast<std::size_t>(m_old + i) * mm];
      const LpRow& row = lp.rows[static_cast<std::size_t>(m_old + i)];
      for (std::size_t t = 0; t < row.idx.size(); ++t) {
        const int v = row.idx[t];
        const int pos = basis_pos[static_cast<std::size_t>(v)];
        if (pos < 0) continue;
        kernels::axpy(-row.val[t], &grown[static_cast<std::size_t>(pos) * mm], out,
                      static_cast<std::size_t>(m_old));
      }
      out[m_old + i] = 1.0;
    }
    binv = std::move(grown);

    status.resize(static_cast<std::size_t>(nv()), VarStatus::kBasic);
    basis_pos.resize(static_cast<std::size_t>(nv()), -1);
    for (int i = 0; i < k; ++i) {
      const int v = ns() + m_old + i;
      basic.push_back(v);
      status[static_cast<std::size_t>(v)] = VarStatus::kBasic;
      basis_pos[static_cast<std::size_t>(v)] = m_old + i;
    }
    // x is recomputed at the next resolve
  }

  void set_var_bounds_impl(int v, double lo, double hi) {
    if (v < 0 || v >= ns()) throw std::invalid_argument("set_var_bounds: bad variable");
    if (lo > hi) throw std::invalid_argument("set_var_bounds: lower > upper");
    lp.lower[static_cast<std::size_t>(v)] = lo;
    lp.upper[static_cast<std::size_t>(v)] = hi;
    if (!basis_valid) return;
    VarStatus& st = status[static_cast<std::size_t>(v)];
    if (st == VarStatus::kBasic) {
      return;  // possibly infeasible now; resolve() restores feasibility
    }
    if (st == VarStatus::kAtLower && !std::isfinite(lo)) {
      st = std::isfinite(hi) ? VarStatus::kAtUpper : VarStatus::kFree;
    } else if (st == VarStatus::kAtUpper && !std::isfinite(hi)) {
      st = std::isfinite(lo) ? VarStatus::kAtLower : VarStatus::kFree;
    } else if (st == VarStatus::kFree && std::isfinite(lo)) {
      st = VarStatus::kAtLower;
    } else if (st == VarStatus::kFree && std::isfinite(hi)) {
      st = VarStatus::kAtUpper;
    }
    // x is recomputed at the next solve/resolve
  }
};

SimplexSolver::SimplexSolver(LinearProgram lp, SimplexConfig cfg)
    : impl_(new Impl(std::move(lp), cfg)) {}

SimplexSolver::~SimplexSolver() { delete impl_; }

SimplexSolver::SimplexSolver(SimplexSolver&& o) noexcept : impl_(o.impl_) { o.impl_ = nullptr; }

SimplexSolver& SimplexSolver::operator=(SimplexSolver&& o) noexcept {
  if (this != &o) {
    delete impl_;
    impl_ = o.impl_;
    o.impl_ = nullptr;
  }
  return *this;
}

LpSolution SimplexSolver::solve(const SimplexLimits& limits) {
  impl_->basis_valid = false;
  return impl_->run(false, limits);
}

LpSolution SimplexSolver::resolve(const SimplexLimits& limits) {
  if (!impl_->basis_valid) return impl_->run(false, limits);
  return impl_->run(true, limits);
}

int SimplexSolver::add_rows(std::span<const LpRow> rows) {
  const int first = impl_->m();
  impl_->add_rows_impl(rows);
  return first;
}

void SimplexSolver::add_row(LpRow row) { add_rows(std::span<const LpRow>(&row, 1)); }

void SimplexSolver::set_var_bounds(int var, double lo, double hi) {
  impl_->set_var_bounds_impl(var, lo, hi);
}

void SimplexSolver::set_objective(int var, double coef) {
  if (var < 0 || var >= impl_->ns()) throw std::invalid_argument("set_objective: bad variable");
  impl_->lp.objective[static_cast<std::size_t>(var)] = coef;
}

int SimplexSolver::num_rows() const { return impl_->m(); }
int SimplexSolver::num_vars() const { return impl_->ns(); }
const LinearProgram& SimplexSolver::program() const { return impl_->lp; }

void SimplexSolver::dump(std::ostream& os) const {
  const LinearProgram& lp = impl_->lp;
  os << "Minimize\n obj:";
  for (int v = 0; v < lp.num_vars; ++v) {
    const double c = lp.objective[static_cast<std::size_t>(v)];
    if (c == 0.0) continue;
    os << (c >= 0 ? " + " : " - ") << std::abs(c) << " x" << v;
  }
  os << "\nSubject To\n";
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const LpRow& row = lp.rows[r];
    os << " r" << r << ":";
    for (std::size_t t = 0; t < row.idx.size(); ++t) {
      os << (row.val[t] >= 0 ? " + " : " - ") << std::abs(row.val[t]) << " x" << row.idx[t];
    }
    os << (row.sense == RowSense::kLe ? " <= " : row.sense == RowSense::kEq ? " = " : " >= ")
       << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < lp.num_vars; ++v) {
    os << " " << lp.lower[static_cast<std::size_t>(v)] << " <= x" << v << " <= "
       << lp.upper[static_cast<std::size_t>(v)] << "\n";
  }
  os << "End\n";
}

LpSolution solve_lp(const LinearProgram& lp, const SimplexLimits& limits, const SimplexConfig& cfg) {
  SimplexSolver solver(lp, cfg);
  return solver.solve(limits);
}

}  // namespace hardtsp
