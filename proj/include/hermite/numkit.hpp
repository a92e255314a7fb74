#pragma once

// Small dense linear algebra kernels sized for spectral problems of a few
// thousand unknowns at most.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hermite::numkit {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> multiply(std::span<const double> x) const;
  DenseMatrix transpose() const;
  double norm_one() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric tridiagonal matrix: `diagonal` has size n, `off_diagonal` n-1;
/// off_diagonal[m-1] couples rows m-1 and m.
struct SymTridiag {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
};

/// All eigenvalues of a symmetric tridiagonal matrix, ascending
/// (implicit-shift QL). Throws NumericalError after 50 sweeps on one
/// eigenvalue.
std::vector<double> tridiag_eigenvalues(const SymTridiag& t);

struct LuSolution {
  std::vector<double> x;
  /// One-norm condition number estimate, ||A||_1 * est(||A^-1||_1).
  double condition = 0.0;
};

/// Gaussian elimination with partial pivoting plus a Hager-Higham one-norm
/// estimate of the condition number. Throws SolvabilityError on an exact
/// zero pivot.
LuSolution lu_solve(const DenseMatrix& a, std::span<const double> b);

/// Eigenvalues of a general real matrix (balance, Hessenberg reduction,
/// Francis double-shift QR). Order is unspecified.
std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& a);

struct LstsqSolution {
  std::vector<double> x;
  double residual_norm = 0.0;
  int rank = 0;
};

/// Least squares via Householder QR with column pivoting. Rank counts the
/// diagonal entries of R above 1e-12 times the largest. Columns beyond the
/// numerical rank get zero coefficients (basic solution).
LstsqSolution lstsq(const DenseMatrix& a, std::span<const double> b);

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);

}  // namespace hermite::numkit
