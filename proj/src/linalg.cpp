#include "arac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arac/kernels.hpp"

namespace arac {

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  constexpr std::size_t kBlock = 32;
  for (std::size_t ib = 0; ib < a.rows(); ib += kBlock) {
    const std::size_t imax = std::min(ib + kBlock, a.rows());
    for (std::size_t jb = 0; jb < a.cols(); jb += kBlock) {
      const std::size_t jmax = std::min(jb + kBlock, a.cols());
      for (std::size_t i = ib; i < imax; ++i)
        for (std::size_t j = jb; j < jmax; ++j) t(j, i) = a(i, j);
    }
  }
  return t;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matvec: size mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    y[i] = kernels::dot(a.row(i), x.data(), a.cols());
  return y;
}

void symmetrize_from_upper(Matrix& a) {
  for (std::size_t i = 1; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
}

double norm2(std::span<const double> x) {
  return std::sqrt(kernels::dot(x.data(), x.data(), x.size()));
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

Vector subtract(std::span<const double> x, std::span<const double> y) {
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

CholeskyResult cholesky(const Matrix& a) {
  const std::size_t n = a.rows();
  CholeskyResult res;
  res.l = Matrix(n, n);
  Matrix& l = res.l;

  double max_abs_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    max_abs_diag = std::max(max_abs_diag, std::abs(a(i, i)));
  // Pivot floor relative to the matrix scale; below it the factorization is
  // reported as failed rather than producing wild factors.
  const double floor = 1e-14 * std::max(max_abs_diag, 1.0);

  for (std::size_t j = 0; j < n; ++j) {
    const double* lrow_j = l.row(j);
    double d = a(j, j) - kernels::dot(lrow_j, lrow_j, j);
    if (!(d > floor)) return res;  // ok stays false
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double v = a(j, i) - kernels::dot(l.row(i), lrow_j, j);
      l(i, j) = v / ljj;
    }
  }
  res.min_diag = l(0, 0);
  res.max_diag = l(0, 0);
  for (std::size_t j = 1; j < n; ++j) {
    res.min_diag = std::min(res.min_diag, l(j, j));
    res.max_diag = std::max(res.max_diag, l(j, j));
  }
  res.ok = true;
  return res;
}

Vector cholesky_solve(const CholeskyResult& f, std::span<const double> b) {
  const Matrix& l = f.l;
  const std::size_t n = l.rows();
  if (!f.ok || b.size() != n)
    throw std::invalid_argument("cholesky_solve: bad factor or size");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i)
    y[i] = (y[i] - kernels::dot(l.row(i), y.data(), i)) / l(i, i);
  // Back substitution against L^T; column access on L is row access here.
  for (std::size_t ii = n; ii-- > 0;) {
    double v = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) v -= l(j, ii) * y[j];
    y[ii] = v / l(ii, ii);
  }
  return y;
}

LuResult lu_factor(Matrix a) {
  const std::size_t n = a.rows();
  LuResult res;
  res.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) {
      res.lu = std::move(a);
      return res;  // singular; ok stays false
    }
    if (piv != k) {
      std::swap_ranges(a.row(k), a.row(k) + n, a.row(piv));
      std::swap(res.perm[k], res.perm[piv]);
    }
    const double pivot = a(k, k);
    res.min_pivot = (k == 0) ? std::abs(pivot)
                             : std::min(res.min_pivot, std::abs(pivot));
    res.max_pivot = std::max(res.max_pivot, std::abs(pivot));
    const double* urow = a.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a(i, k) / pivot;
      a(i, k) = m;
      if (m != 0.0)
        kernels::axpy(-m, urow + k + 1, a.row(i) + k + 1, n - k - 1);
    }
  }
  res.lu = std::move(a);
  res.ok = true;
  return res;
}

Vector lu_solve(const LuResult& f, std::span<const double> b) {
  const Matrix& lu = f.lu;
  const std::size_t n = lu.rows();
  if (!f.ok || b.size() != n)
    throw std::invalid_argument("lu_solve: bad factor or size");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[f.perm[i]];
  for (std::size_t i = 1; i < n; ++i)
    y[i] -= kernels::dot(lu.row(i), y.data(), i);
  for (std::size_t ii = n; ii-- > 0;) {
    const double v = y[ii] - kernels::dot(lu.row(ii) + ii + 1, y.data() + ii + 1,
                                          n - ii - 1);
    y[ii] = v / lu(ii, ii);
  }
  return y;
}

LstsqResult lstsq_qr(Matrix a, Vector b, double rcond) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("lstsq_qr: size mismatch");
  if (m == 0 || n == 0) return LstsqResult{Vector(n, 0.0), 0};

  // Householder QR with column pivoting, working on A^T so that columns of A
  // are contiguous.
  Matrix at = transpose(a);
  std::vector<std::size_t> colperm(n);
  for (std::size_t j = 0; j < n; ++j) colperm[j] = j;
  Vector colnorm2(n);
  for (std::size_t j = 0; j < n; ++j)
    colnorm2[j] = kernels::dot(at.row(j), at.row(j), m);

  const std::size_t kmax = std::min(m, n);
  Vector rdiag(kmax, 0.0);
  std::size_t rank = 0;

  for (std::size_t k = 0; k < kmax; ++k) {
    std::size_t best = k;
    for (std::size_t j = k + 1; j < n; ++j)
      if (colnorm2[j] > colnorm2[best]) best = j;
    if (best != k) {
      std::swap_ranges(at.row(k), at.row(k) + m, at.row(best));
      std::swap(colnorm2[k], colnorm2[best]);
      std::swap(colperm[k], colperm[best]);
    }

    double* col = at.row(k);
    const double sigma =
        std::sqrt(kernels::dot(col + k, col + k, m - k));
    if (sigma == 0.0) break;
    double alpha = (col[k] >= 0.0) ? -sigma : sigma;
    // Householder vector v = x - alpha e1, stored in place below the diagonal.
    col[k] -= alpha;
    const double vnorm2 = kernels::dot(col + k, col + k, m - k);
    if (vnorm2 == 0.0) break;

    for (std::size_t j = k + 1; j < n; ++j) {
      double* cj = at.row(j);
      const double t =
          2.0 * kernels::dot(col + k, cj + k, m - k) / vnorm2;
      kernels::axpy(-t, col + k, cj + k, m - k);
      colnorm2[j] -= cj[k] * cj[k];
      if (colnorm2[j] < 0.0) colnorm2[j] = 0.0;
    }
    {
      const double t = 2.0 * kernels::dot(col + k, b.data() + k, m - k) / vnorm2;
      kernels::axpy(-t, col + k, b.data() + k, m - k);
    }
    rdiag[k] = alpha;
    ++rank;
  }

  // Trim trailing pivots below the relative tolerance.
  const double tol = std::abs(rdiag[0]) * rcond;
  while (rank > 0 && std::abs(rdiag[rank - 1]) <= tol) --rank;

  Vector xp(n, 0.0);
  for (std::size_t ii = rank; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t j = ii + 1; j < rank; ++j) v -= at(j, ii) * xp[j];
    xp[ii] = v / rdiag[ii];
  }
  // Undo column pivoting. Off-diagonal R entries live above the Householder
  // vectors in at(j, i) for j > i.
  LstsqResult res;
  res.rank = rank;
  res.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) res.x[colperm[j]] = xp[j];
  return res;
}

}  // namespace arac
