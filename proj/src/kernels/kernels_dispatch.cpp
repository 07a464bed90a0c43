#include "arac/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace arac::kernels {
namespace {

using detail::KernelTable;

bool host_has_avx2() {
#if defined(ARAC_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &detail::scalar_table();
    case Backend::Avx2:
#if defined(ARAC_HAVE_AVX2)
      return host_has_avx2() ? &detail::avx2_table() : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend initial_backend() {
  if (const char* env = std::getenv("ARAC_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(env, "avx2") == 0 && table_for(Backend::Avx2))
      return Backend::Avx2;
  }
  return table_for(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

struct Dispatch {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> table;
  Dispatch() {
    const Backend b = initial_backend();
    backend.store(b);
    table.store(table_for(b));
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

inline const KernelTable& active() { return *dispatch().table.load(); }

}  // namespace

Backend active_backend() { return dispatch().backend.load(); }

bool backend_supported(Backend b) { return table_for(b) != nullptr; }

bool set_backend(Backend b) {
  const KernelTable* t = table_for(b);
  if (!t) return false;
  dispatch().backend.store(b);
  dispatch().table.store(t);
  return true;
}

std::string_view backend_name(Backend b) {
  return b == Backend::Scalar ? "scalar" : "avx2";
}

double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}

double sum(const double* x, std::size_t n) { return active().sum(x, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}

void rank1_update(double* a, std::size_t rows, std::size_t cols, double alpha,
                  const double* x, const double* y) {
  active().rank1_update(a, rows, cols, alpha, x, y);
}

void rank1_sym_update(double* a, std::size_t n, double alpha,
                      const double* x) {
  active().rank1_sym_update(a, n, alpha, x);
}

void gemm_accum(double* c, const double* a, const double* b, std::size_t m,
                std::size_t k, std::size_t n) {
  active().gemm_accum(c, a, b, m, k, n);
}

}  // namespace arac::kernels
