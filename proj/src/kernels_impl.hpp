#pragma once

// Internal: per-backend kernel entry points. Only kernels.cpp (dispatch) and
// the backend translation units include this.

#include "hardtsp/kernels.hpp"

namespace hardtsp::kernels::detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t len);
double dot_scalar(const double* x, const double* y, std::size_t len);
void scan_tri_scalar(const double* m, int n, double tol, std::vector<TriViol>& out);
Interval chord_scalar(const double* p, const double* d, int n);

#if defined(__x86_64__) || defined(_M_X64)
#define HARDTSP_HAVE_AVX2_BACKEND 1
void axpy_avx2(double a, const double* x, double* y, std::size_t len);
double dot_avx2(const double* x, const double* y, std::size_t len);
void scan_tri_avx2(const double* m, int n, double tol, std::vector<TriViol>& out);
Interval chord_avx2(const double* p, const double* d, int n);
#else
#define HARDTSP_HAVE_AVX2_BACKEND 0
#endif

}  // namespace hardtsp::kernels::detail
