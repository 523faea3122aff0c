#include <algorithm>
#include <limits>

#include "kernels_impl.hpp"

namespace hardtsp::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t len) {
  double s = 0.0;
  for (std::size_t i = 0; i < len; ++i) s += x[i] * y[i];
  return s;
}

void scan_tri_scalar(const double* m, int n, double tol, std::vector<TriViol>& out) {
  for (int i = 0; i < n; ++i) {
    const double* mi = m + static_cast<std::size_t>(i) * n;
    for (int j = i + 1; j < n; ++j) {
      const double* mj = m + static_cast<std::size_t>(j) * n;
      const double mij = mi[j];
      // k == i or k == j gives violation exactly 0, never above a tol >= 0.
      for (int k = 0; k < n; ++k) {
        const double v = mij - mi[k] - mj[k];
        if (v > tol) out.push_back({i, j, k, v});
      }
    }
  }
}

Interval chord_scalar(const double* p, const double* d, int n) {
  constexpr double kParallel = 1e-12;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  auto clip = [&](double g, double num) {
    if (g > kParallel) {
      hi = std::min(hi, num / g);
    } else if (g < -kParallel) {
      lo = std::max(lo, num / g);
    }
  };

  for (int i = 0; i < n; ++i) {
    const double* pi = p + static_cast<std::size_t>(i) * n;
    const double* di = d + static_cast<std::size_t>(i) * n;
    for (int j = i + 1; j < n; ++j) {
      const double* pj = p + static_cast<std::size_t>(j) * n;
      const double* dj = d + static_cast<std::size_t>(j) * n;
      const double pij = pi[j], dij = di[j];
      // nonnegativity of edge {i,j}: -x_ij <= 0
      clip(-dij, pij);
      for (int k = j + 1; k < n; ++k) {
        const double pik = pi[k], pjk = pj[k];
        const double dik = di[k], djk = dj[k];
        // three triangle rows of the triple {i,j,k}
        clip(dij - dik - djk, -(pij - pik - pjk));
        clip(dik - dij - djk, -(pik - pij - pjk));
        clip(djk - dij - dik, -(pjk - pij - pik));
        // perimeter row: x_ij + x_ik + x_jk <= 2
        clip(dij + dik + djk, 2.0 - (pij + pik + pjk));
      }
    }
  }
  return {lo, hi};
}

}  // namespace hardtsp::kernels::detail
