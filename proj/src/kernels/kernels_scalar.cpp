#include "kernels_internal.hpp"

// Reference kernels.  Plain loops, no intrinsics; these define the semantics
// the vector backends are tested against.

namespace arac::kernels::detail {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rank1_scalar(double* a, std::size_t rows, std::size_t cols, double alpha,
                  const double* x, const double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double s = alpha * x[i];
    double* row = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] += s * y[j];
  }
}

void rank1_sym_scalar(double* a, std::size_t n, double alpha,
                      const double* x) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = alpha * x[i];
    double* row = a + i * n;
    for (std::size_t j = i; j < n; ++j) row[j] += s * x[j];
  }
}

void gemm_scalar(double* c, const double* a, const double* b, std::size_t m,
                 std::size_t k, std::size_t n) {
  // i-k-j order: streams B rows while a C row stays hot.
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    const double* arow = a + i * k;
    std::size_t p = 0;
    for (; p + 4 <= k; p += 4) {
      const double a0 = arow[p], a1 = arow[p + 1];
      const double a2 = arow[p + 2], a3 = arow[p + 3];
      const double* b0 = b + p * n;
      const double* b1 = b0 + n;
      const double* b2 = b1 + n;
      const double* b3 = b2 + n;
      for (std::size_t j = 0; j < n; ++j)
        crow[j] += a0 * b0[j] + a1 * b1[j] + a2 * b2[j] + a3 * b3[j];
    }
    for (; p < k; ++p) {
      const double ap = arow[p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ap * brow[j];
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{dot_scalar,       sum_scalar,
                                 axpy_scalar,      rank1_scalar,
                                 rank1_sym_scalar, gemm_scalar};
  return table;
}

}  // namespace arac::kernels::detail
