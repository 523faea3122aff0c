#include "hardtsp/kernels.hpp"

#include "kernels_impl.hpp"

namespace hardtsp::kernels {

namespace {

struct Vtable {
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*scan)(const double*, int, double, std::vector<TriViol>&);
  Interval (*chord)(const double*, const double*, int);
};

constexpr Vtable kScalarVtable{detail::axpy_scalar, detail::dot_scalar,
                               detail::scan_tri_scalar, detail::chord_scalar};

#if HARDTSP_HAVE_AVX2_BACKEND
constexpr Vtable kAvx2Vtable{detail::axpy_avx2, detail::dot_avx2,
                             detail::scan_tri_avx2, detail::chord_avx2};
#endif

Backend g_backend = Backend::kScalar;
const Vtable* g_vtable = nullptr;

void select(Backend b) {
#if HARDTSP_HAVE_AVX2_BACKEND
  if (b == Backend::kAuto) b = cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
  if (b == Backend::kAvx2) {
    g_backend = Backend::kAvx2;
    g_vtable = &kAvx2Vtable;
    return;
  }
#else
  if (b == Backend::kAuto || b == Backend::kAvx2) b = Backend::kScalar;
#endif
  g_backend = Backend::kScalar;
  g_vtable = &kScalarVtable;
}

const Vtable& table() {
  if (g_vtable == nullptr) select(Backend::kAuto);
  return *g_vtable;
}

}  // namespace

bool cpu_has_avx2() {
#if HARDTSP_HAVE_AVX2_BACKEND
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

void set_backend(Backend b) { select(b); }

Backend active_backend() {
  table();
  return g_backend;
}

const char* backend_name() {
  return active_backend() == Backend::kAvx2 ? "avx2" : "scalar";
}

void axpy(double a, const double* x, double* y, std::size_t len) {
  table().axpy(a, x, y, len);
}

double dot(const double* x, const double* y, std::size_t len) {
  return table().dot(x, y, len);
}

void scan_triangle_violations(const double* m, int n, double tol,
                              std::vector<TriViol>& out) {
  table().scan(m, n, tol, out);
}

Interval metric_chord(const double* p, const double* d, int n) {
  return table().chord(p, d, n);
}

}  // namespace hardtsp::kernels
