#pragma once

// Small dense linear algebra used throughout: a row-major matrix type plus
// the factorizations the critic needs (Cholesky with a least-squares
// fallback, partially pivoted LU).  Inner loops go through arac::kernels.

#include <cstddef>
#include <span>
#include <vector>

namespace arac {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }
  std::span<const double> row_span(std::size_t i) const {
    return {row(i), cols_};
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  void fill(double v) { data_.assign(data_.size(), v); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);

// y = A x
Vector matvec(const Matrix& a, std::span<const double> x);

// Mirrors the upper triangle into the lower one.
void symmetrize_from_upper(Matrix& a);

double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);

// x - y
Vector subtract(std::span<const double> x, std::span<const double> y);

// Cholesky factorization A = L L^T of a symmetric positive definite matrix
// (upper triangle of `a` is read).  ok == false when a pivot underflows.
struct CholeskyResult {
  Matrix l;
  double min_diag = 0.0;
  double max_diag = 0.0;
  bool ok = false;

  // Rough spectral condition number from the factor diagonal.
  double condition_estimate() const {
    if (min_diag <= 0.0) return 0.0;
    const double r = max_diag / min_diag;
    return r * r;
  }
};

CholeskyResult cholesky(const Matrix& a);
Vector cholesky_solve(const CholeskyResult& f, std::span<const double> b);

// LU with partial pivoting.  ok == false when a pivot column is exactly
// degenerate.
struct LuResult {
  Matrix lu;
  std::vector<std::size_t> perm;
  double min_pivot = 0.0;
  double max_pivot = 0.0;
  bool ok = false;

  double condition_estimate() const {
    return min_pivot > 0.0 ? max_pivot / min_pivot : 0.0;
  }
};

LuResult lu_factor(Matrix a);
Vector lu_solve(const LuResult& f, std::span<const double> b);

// Minimum-residual solve of A x ~= b via Householder QR with column
// pivoting; rank-deficient columns (relative pivot below rcond) are dropped
// and their coefficients set to zero.
struct LstsqResult {
  Vector x;
  std::size_t rank = 0;
};

LstsqResult lstsq_qr(Matrix a, Vector b, double rcond = 1e-12);

}  // namespace arac
