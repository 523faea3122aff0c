#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hardtsp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLe, kEq, kGe };

struct LpRow {
  std::vector<int> idx;
  std::vector<double> val;
  RowSense sense = RowSense::kLe;
  double rhs = 0.0;
};

// Minimization LP over bounded variables with equality/inequality rows.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;  // size num_vars
  std::vector<double> lower;      // -inf allowed
  std::vector<double> upper;      // +inf allowed
  std::vector<LpRow> rows;

  static LinearProgram boxed(int num_vars, double lo, double hi);
  void validate() const;  // throws std::invalid_argument on malformed input
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kSingular };

const char* to_string(LpStatus s);

// Variable position in the current basis partition. Logical (slack) variables
// of the rows are appended after the structural ones in the status vector.
enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;             // structural values
  double objective = 0.0;
  std::vector<double> row_activity;  // a_i . x per row
  // basis descriptor: which variables/rows are basic
  std::vector<int> basic_vars;          // variable index per basis slot (>= num_vars: logical of row v - num_vars)
  std::vector<VarStatus> var_status;    // structural + logical statuses
  int iterations = 0;
  int phase1_iterations = 0;
};

struct SimplexConfig {
  double tol_feas = 1e-7;
  double tol_opt = 1e-7;
  double tol_pivot = 1e-9;
  int refactor_period = 120;
  int bland_trigger = 1000;  // consecutive degenerate pivots before Bland's rule
};

struct SimplexLimits {
  int max_iterations = 500000;
  double time_limit_sec = kInf;
};

// Revised simplex with an explicit dense basis inverse. Cold solves run a
// composite phase 1 followed by the primal simplex (or go straight to the
// dual simplex when the initial logical basis is already dual feasible).
// Row additions and bound changes preserve dual feasibility, so resolve()
// restarts with the dual simplex from the previous basis.
class SimplexSolver {
 public:
  explicit SimplexSolver(LinearProgram lp, SimplexConfig cfg = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  LpSolution solve(const SimplexLimits& limits = {});
  // Warm restart after add_rows/set_var_bounds; falls back to a cold solve
  // when the stored basis is not dual feasible.
  LpSolution resolve(const SimplexLimits& limits = {});

  int add_rows(std::span<const LpRow> rows);  // returns index of first new row
  void add_row(LpRow row);
  void set_var_bounds(int var, double lo, double hi);
  void set_objective(int var, double coef);

  int num_rows() const;
  int num_vars() const;
  const LinearProgram& program() const;

  // Text dump (LP-format style) for debugging.
  void dump(std::ostream& os) const;

 private:
  struct Impl;
  Impl* impl_;
};

LpSolution solve_lp(const LinearProgram& lp, const SimplexLimits& limits = {},
                    const SimplexConfig& cfg = {});

}  // namespace hardtsp
