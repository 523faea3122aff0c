#pragma once

#include <cstddef>
#include <vector>

namespace hardtsp::kernels {

// Data-parallel inner loops used by the samplers, separators, and the simplex
// engine. Each kernel has a scalar reference implementation and an AVX2
// variant; the active one is selected at runtime from CPU capabilities and
// can be overridden (tests pin both backends and compare).
//
// scan_triangle_violations and metric_chord are bit-exact across backends:
// they use only per-element subtract/add/divide and min/max reductions, and
// every translation unit involved is compiled with FP contraction off.
// dot vectorizes the reduction, so results agree only up to rounding.

enum class Backend { kAuto, kScalar, kAvx2 };

void set_backend(Backend b);      // kAuto re-detects from the CPU
Backend active_backend();
const char* backend_name();
bool cpu_has_avx2();

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t len);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t len);

struct TriViol {
  int i, j, k;       // long edge {i,j}, apex k
  double violation;  // m[i][j] - m[i][k] - m[j][k] > tol
};

// Scans a dense symmetric n-by-n matrix (row-major, zero diagonal) and
// appends every oriented triangle violation above tol, in (i,j,k) iteration
// order with i < j.
void scan_triangle_violations(const double* m, int n, double tol,
                              std::vector<TriViol>& out);

struct Interval {
  double lo, hi;
};

// Feasible step interval [lo, hi] for p + t*d within the metric polytope
// rows (3 triangle rows + 1 perimeter row per triple, nonnegativity per
// edge). p and d are dense symmetric n-by-n matrices with zero diagonal;
// p must be feasible. Rows whose directional derivative is below 1e-12 in
// magnitude are treated as parallel.
Interval metric_chord(const double* p, const double* d, int n);

}  // namespace hardtsp::kernels
