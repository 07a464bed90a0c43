#pragma once

// Dense double-precision kernels behind the hot loops: critic system
// assembly, Gram products, dot/axpy sweeps.  Every kernel has a scalar
// reference implementation and (on x86-64) an AVX2/FMA variant; the active
// variant is chosen once at startup from CPU capabilities and can be
// overridden for testing.  The two variants are equivalence-tested against
// each other, so any backend may be used interchangeably up to floating
// point reassociation.

#include <cstddef>
#include <string_view>

namespace arac::kernels {

enum class Backend { Scalar, Avx2 };

// Backend selected at process start (best supported, or the one named by
// the ARAC_KERNELS environment variable: "scalar" or "avx2").
Backend active_backend();

// Returns false and leaves the backend unchanged if `b` is not supported
// on this host.
bool set_backend(Backend b);

bool backend_supported(Backend b);
std::string_view backend_name(Backend b);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

// sum_i x[i]
double sum(const double* x, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

// A (rows x cols, row-major) += alpha * x * y^T
void rank1_update(double* a, std::size_t rows, std::size_t cols, double alpha,
                  const double* x, const double* y);

// Upper triangle (j >= i) of A (n x n, row-major) += alpha * x * x^T
void rank1_sym_update(double* a, std::size_t n, double alpha, const double* x);

// C (m x n) += A (m x k) * B (k x n), all row-major.  C must not alias A or B.
void gemm_accum(double* c, const double* a, const double* b, std::size_t m,
                std::size_t k, std::size_t n);

}  // namespace arac::kernels
