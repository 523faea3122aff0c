// AVX2 kernel variants. Compiled with -mavx2 (no -mfma) and FP contraction
// off, so per-element arithmetic matches the scalar reference bit for bit;
// only dot() differs by reduction order.

#include "kernels_impl.hpp"

#if HARDTSP_HAVE_AVX2_BACKEND

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace hardtsp::kernels::detail {

void axpy_avx2(double a, const double* x, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < len; ++i) y[i] += a * x[i];
}

double dot_avx2(const double* x, const double* y, std::size_t len) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

void scan_tri_avx2(const double* m, int n, double tol, std::vector<TriViol>& out) {
  alignas(32) double lane[4];
  for (int i = 0; i < n; ++i) {
    const double* mi = m + static_cast<std::size_t>(i) * n;
    for (int j = i + 1; j < n; ++j) {
      const double* mj = m + static_cast<std::size_t>(j) * n;
      const double mij = mi[j];
      const __m256d vmij = _mm256_set1_pd(mij);
      int k = 0;
      for (; k + 4 <= n; k += 4) {
        __m256d v = _mm256_sub_pd(_mm256_sub_pd(vmij, _mm256_loadu_pd(mi + k)),
                                  _mm256_loadu_pd(mj + k));
        _mm256_store_pd(lane, v);
        for (int l = 0; l < 4; ++l) {
          if (lane[l] > tol) out.push_back({i, j, k + l, lane[l]});
        }
      }
      for (; k < n; ++k) {
        const double v = mij - mi[k] - mj[k];
        if (v > tol) out.push_back({i, j, k, v});
      }
    }
  }
}

namespace {

constexpr double kParallel = 1e-12;

struct ChordAcc {
  __m256d lo = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d hi = _mm256_set1_pd(std::numeric_limits<double>::infinity());

  void clip(__m256d g, __m256d num) {
    const __m256d pos = _mm256_cmp_pd(g, _mm256_set1_pd(kParallel), _CMP_GT_OQ);
    const __m256d neg = _mm256_cmp_pd(g, _mm256_set1_pd(-kParallel), _CMP_LT_OQ);
    const __m256d active = _mm256_or_pd(pos, neg);
    const __m256d g_safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), g, active);
    const __m256d ratio = _mm256_div_pd(num, g_safe);
    hi = _mm256_min_pd(hi, _mm256_blendv_pd(hi, ratio, pos));
    lo = _mm256_max_pd(lo, _mm256_blendv_pd(lo, ratio, neg));
  }
};

inline __m256d negate(__m256d v) {
  return _mm256_xor_pd(v, _mm256_set1_pd(-0.0));
}

}  // namespace

Interval chord_avx2(const double* p, const double* d, int n) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  auto clip_s = [&](double g, double num) {
    if (g > kParallel) {
      hi = std::min(hi, num / g);
    } else if (g < -kParallel) {
      lo = std::max(lo, num / g);
    }
  };

  ChordAcc acc;
  for (int i = 0; i < n; ++i) {
    const double* pi = p + static_cast<std::size_t>(i) * n;
    const double* di = d + static_cast<std::size_t>(i) * n;
    for (int j = i + 1; j < n; ++j) {
      const double* pj = p + static_cast<std::size_t>(j) * n;
      const double* dj = d + static_cast<std::size_t>(j) * n;
      const double pij = pi[j], dij = di[j];
      clip_s(-dij, pij);
      const __m256d vpij = _mm256_set1_pd(pij);
      const __m256d vdij = _mm256_set1_pd(dij);
      int k = j + 1;
      for (; k + 4 <= n; k += 4) {
        const __m256d vpik = _mm256_loadu_pd(pi + k);
        const __m256d vpjk = _mm256_loadu_pd(pj + k);
        const __m256d vdik = _mm256_loadu_pd(di + k);
        const __m256d vdjk = _mm256_loadu_pd(dj + k);
        acc.clip(_mm256_sub_pd(_mm256_sub_pd(vdij, vdik), vdjk),
                 negate(_mm256_sub_pd(_mm256_sub_pd(vpij, vpik), vpjk)));
        acc.clip(_mm256_sub_pd(_mm256_sub_pd(vdik, vdij), vdjk),
                 negate(_mm256_sub_pd(_mm256_sub_pd(vpik, vpij), vpjk)));
        acc.clip(_mm256_sub_pd(_mm256_sub_pd(vdjk, vdij), vdik),
                 negate(_mm256_sub_pd(_mm256_sub_pd(vpjk, vpij), vpik)));
        acc.clip(_mm256_add_pd(_mm256_add_pd(vdij, vdik), vdjk),
                 _mm256_sub_pd(_mm256_set1_pd(2.0), _mm256_add_pd(_mm256_add_pd(vpij, vpik), vpjk)));
      }
      for (; k < n; ++k) {
        const double pik = pi[k], pjk = pj[k];
        const double dik = di[k], djk = dj[k];
        clip_s(dij - dik - djk, -(pij - pik - pjk));
        clip_s(dik - dij - djk, -(pik - pij - pjk));
        clip_s(djk - dij - dik, -(pjk - pij - pik));
        clip_s(dij + dik + djk, 2.0 - (pij + pik + pjk));
      }
    }
  }

  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc.lo);
  for (double v : lane) lo = std::max(lo, v);
  _mm256_store_pd(lane, acc.hi);
  for (double v : lane) hi = std::min(hi, v);
  return {lo, hi};
}

}  // namespace hardtsp::kernels::detail

#endif  // HARDTSP_HAVE_AVX2_BACKEND
