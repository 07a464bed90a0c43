#pragma once

#include <cstddef>

// Per-backend entry points.  The dispatch table in kernels_dispatch.cpp is
// the only consumer.

namespace arac::kernels::detail {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*rank1_update)(double*, std::size_t, std::size_t, double,
                       const double*, const double*);
  void (*rank1_sym_update)(double*, std::size_t, double, const double*);
  void (*gemm_accum)(double*, const double*, const double*, std::size_t,
                     std::size_t, std::size_t);
};

const KernelTable& scalar_table();

#if defined(ARAC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace arac::kernels::detail
