#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace genus1 {

/// Dense row-major matrix; workhorse of the interior-point solver.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;
  /// (A + A^T) / 2.
  Matrix symmetrized() const;
  double frobenius_norm() const noexcept;
  double trace() const noexcept;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);
  /// this += s * o.
  Matrix& add_scaled(const Matrix& o, double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// <A, B> = sum_ij A_ij B_ij.
double frobenius_dot(const Matrix& a, const Matrix& b) noexcept;

/// Symmetric matrix stored as its packed upper triangle (row-major).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), packed_(n * (n + 1) / 2, 0.0) {}

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> diag);
  /// Symmetrizes (A + A^T) / 2.
  static SymMatrix from_dense(const Matrix& a);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) noexcept { packed_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) noexcept { packed_[index(i, j)] += v; }
  std::span<const double> packed() const noexcept { return packed_; }

  Matrix dense() const;
  double frobenius_norm() const noexcept;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& add_scaled(const SymMatrix& o, double s);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t n_ = 0;
  std::vector<double> packed_;
};

/// Lower Cholesky factor L with A = L L^T, or nullopt if A is not (numerically) PD.
std::optional<Matrix> cholesky(const Matrix& a);

/// Solves L L^T x = b given the Cholesky factor.
std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b);

/// Inverse of an SPD matrix from its Cholesky factor.
Matrix cholesky_inverse(const Matrix& lower);

/// L^{-1} B L^{-T} for symmetric B.
Matrix congruence_inverse(const Matrix& lower, const Matrix& b);

struct EigenDecomposition {
  std::vector<double> values;  ///< descending
  Matrix vectors;              ///< column k is the eigenvector of values[k]
};

/// Cyclic Jacobi rotations until the off-diagonal mass is below tol * ||S||_F.
EigenDecomposition jacobi_eigen(const SymMatrix& s, double tol = 1e-14);
EigenDecomposition jacobi_eigen(const Matrix& s, double tol = 1e-14);

double min_eigenvalue(const Matrix& s);

/// Solution set {x : M x = rhs} written as particular + span(null_basis columns).
struct AffineSolution {
  std::vector<double> particular;
  Matrix null_basis;         ///< orthonormal columns
  std::size_t rank = 0;
  double residual = 0.0;     ///< ||M particular - rhs||_inf (inconsistency measure)
};

/// Householder QR with column pivoting on M^T.
AffineSolution solve_affine(const Matrix& m, std::span<const double> rhs, double rank_tol = 1e-12);

}  // namespace genus1
