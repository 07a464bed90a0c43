#include "kernels_internal.hpp"

#if defined(ARAC_HAVE_AVX2)

#include <immintrin.h>

namespace arac::kernels::detail {
namespace {

inline double hsum256(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                           acc0);
    i += 4;
  }
  double acc = hsum256(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  if (i + 4 <= n) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    i += 4;
  }
  double acc = hsum256(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_pd(
        y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                               _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(
        y + i + 4, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4),
                                   _mm256_loadu_pd(y + i + 4)));
  }
  if (i + 4 <= n) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
    i += 4;
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rank1_avx2(double* a, std::size_t rows, std::size_t cols, double alpha,
                const double* x, const double* y) {
  for (std::size_t i = 0; i < rows; ++i)
    axpy_avx2(alpha * x[i], y, a + i * cols, cols);
}

void rank1_sym_avx2(double* a, std::size_t n, double alpha, const double* x) {
  for (std::size_t i = 0; i < n; ++i)
    axpy_avx2(alpha * x[i], x + i, a + i * n + i, n - i);
}

// Four B rows per pass so each C element gets four FMAs per sweep.
void gemm_avx2(double* c, const double* a, const double* b, std::size_t m,
               std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    const double* arow = a + i * k;
    std::size_t p = 0;
    for (; p + 4 <= k; p += 4) {
      const __m256d a0 = _mm256_set1_pd(arow[p]);
      const __m256d a1 = _mm256_set1_pd(arow[p + 1]);
      const __m256d a2 = _mm256_set1_pd(arow[p + 2]);
      const __m256d a3 = _mm256_set1_pd(arow[p + 3]);
      const double* b0 = b + p * n;
      const double* b1 = b0 + n;
      const double* b2 = b1 + n;
      const double* b3 = b2 + n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_loadu_pd(crow + j);
        acc = _mm256_fmadd_pd(a0, _mm256_loadu_pd(b0 + j), acc);
        acc = _mm256_fmadd_pd(a1, _mm256_loadu_pd(b1 + j), acc);
        acc = _mm256_fmadd_pd(a2, _mm256_loadu_pd(b2 + j), acc);
        acc = _mm256_fmadd_pd(a3, _mm256_loadu_pd(b3 + j), acc);
        _mm256_storeu_pd(crow + j, acc);
      }
      for (; j < n; ++j) {
        crow[j] += arow[p] * b0[j] + arow[p + 1] * b1[j] +
                   arow[p + 2] * b2[j] + arow[p + 3] * b3[j];
      }
    }
    for (; p < k; ++p) axpy_avx2(arow[p], b + p * n, crow, n);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{dot_avx2,       sum_avx2,
                                 axpy_avx2,      rank1_avx2,
                                 rank1_sym_avx2, gemm_avx2};
  return table;
}

}  // namespace arac::kernels::detail

#endif  // ARAC_HAVE_AVX2
