#include "genus1/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "genus1/error.hpp"

namespace genus1 {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::symmetrized() const {
  Matrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

double Matrix::frobenius_norm() const noexcept { return std::sqrt(frobenius_dot(*this, *this)); }

double Matrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) { return add_scaled(o, 1.0); }
Matrix& Matrix::operator-=(const Matrix& o) { return add_scaled(o, -1.0); }

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix& Matrix::add_scaled(const Matrix& o, double s) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

double frobenius_dot(const Matrix& a, const Matrix& b) noexcept {
  const auto da = a.data();
  const auto db = b.data();
  double s = 0.0;
  for (std::size_t k = 0; k < da.size(); ++k) s += da[k] * db[k];
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix s(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) s.set(i, i, diag[i]);
  return s;
}

SymMatrix SymMatrix::from_dense(const Matrix& a) {
  SymMatrix s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
  return s;
}

Matrix SymMatrix::dense() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) m(i, j) = m(j, i) = (*this)(i, j);
  return m;
}

double SymMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      const double v = (*this)(i, j);
      s += (i == j ? 1.0 : 2.0) * v * v;
    }
  }
  return std::sqrt(s);
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) { return add_scaled(o, 1.0); }

SymMatrix& SymMatrix::add_scaled(const SymMatrix& o, double s) {
  if (o.n_ != n_) throw Error(ErrorCode::InvalidArgument, "symmetric matrix dimension mismatch");
  for (std::size_t k = 0; k < packed_.size(); ++k) packed_[k] += s * o.packed_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : packed_) v *= s;
  return *this;
}

std::optional<Matrix> cholesky(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return l;
}

std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= lower(i, k) * y[k];
    y[i] /= lower(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= lower(k, i) * y[k];
    y[i] /= lower(i, i);
  }
  return y;
}

namespace {

Matrix lower_inverse(const Matrix& l) {
  const std::size_t n = l.rows();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * inv(k, j);
      inv(i, j) = -s / l(i, i);
    }
  }
  return inv;
}

}  // namespace

Matrix cholesky_inverse(const Matrix& lower) {
  const Matrix li = lower_inverse(lower);
  return (li.transposed() * li).symmetrized();
}

Matrix congruence_inverse(const Matrix& lower, const Matrix& b) {
  const Matrix li = lower_inverse(lower);
  return (li * b * li.transposed()).symmetrized();
}

EigenDecomposition jacobi_eigen(const SymMatrix& s, double tol) { return jacobi_eigen(s.dense(), tol); }

EigenDecomposition jacobi_eigen(const Matrix& s, double tol) {
  const std::size_t n = s.rows();
  Matrix a = s.symmetrized();
  Matrix v = Matrix::identity(n);
  const double norm = a.frobenius_norm();
  for (int sweep = 0; sweep < 100 && norm > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * norm) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= std::numeric_limits<double>::min()) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue(const Matrix& s) {
  if (s.rows() == 0) return 0.0;
  return jacobi_eigen(s).values.back();
}

AffineSolution solve_affine(const Matrix& m, std::span<const double> rhs, double rank_tol) {
  const std::size_t ncons = m.rows();
  const std::size_t nvars = m.cols();
  if (rhs.size() != ncons) throw Error(ErrorCode::InvalidArgument, "rhs length mismatch");
  Matrix a = m.transposed();  // nvars x ncons
  std::vector<std::size_t> perm(ncons);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::vector<double>> reflectors;
  std::vector<double> betas;

  auto col_norm = [&](std::size_t col, std::size_t from) {
    double s = 0.0;
    for (std::size_t i = from; i < nvars; ++i) s += a(i, col) * a(i, col);
    return std::sqrt(s);
  };
  double first_norm = 0.0;
  for (std::size_t j = 0; j < ncons; ++j) first_norm = std::max(first_norm, col_norm(j, 0));

  std::size_t rank = 0;
  const std::size_t steps = std::min(nvars, ncons);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < ncons; ++j) {
      const double nj = col_norm(j, k);
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best_norm <= rank_tol * std::max(first_norm, 1.0)) break;
    if (best != k) {
      for (std::size_t i = 0; i < nvars; ++i) std::swap(a(i, k), a(i, best));
      std::swap(perm[k], perm[best]);
    }
    std::vector<double> v(nvars - k);
    for (std::size_t i = k; i < nvars; ++i) v[i - k] = a(i, k);
    const double alpha = (v[0] >= 0.0 ? -1.0 : 1.0) * best_norm;
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    const double beta = vnorm2 > 0.0 ? 2.0 / vnorm2 : 0.0;
    for (std::size_t j = k; j < ncons; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < nvars; ++i) s += v[i - k] * a(i, j);
      s *= beta;
      for (std::size_t i = k; i < nvars; ++i) a(i, j) -= s * v[i - k];
    }
    reflectors.push_back(std::move(v));
    betas.push_back(beta);
    ++rank;
  }

  // Q = H_0 H_1 ... H_{rank-1}.
  Matrix q = Matrix::identity(nvars);
  for (std::size_t k = rank; k-- > 0;) {
    const auto& v = reflectors[k];
    for (std::size_t j = 0; j < nvars; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < nvars; ++i) s += v[i - k] * q(i, j);
      s *= betas[k];
      for (std::size_t i = k; i < nvars; ++i) q(i, j) -= s * v[i - k];
    }
  }

  // Forward substitution on R_1^T y = (P^T rhs)_{0..rank-1}.
  std::vector<double> y(rank, 0.0);
  for (std::size_t j = 0; j < rank; ++j) {
    double s = rhs[perm[j]];
    for (std::size_t i = 0; i < j; ++i) s -= a(i, j) * y[i];
    y[j] = s / a(j, j);
  }
  AffineSolution out;
  out.rank = rank;
  out.particular.assign(nvars, 0.0);
  for (std::size_t i = 0; i < nvars; ++i)
    for (std::size_t k = 0; k < rank; ++k) out.particular[i] += q(i, k) * y[k];
  out.null_basis = Matrix(nvars, nvars - rank);
  for (std::size_t i = 0; i < nvars; ++i)
    for (std::size_t k = rank; k < nvars; ++k) out.null_basis(i, k - rank) = q(i, k);
  const auto mx = m * std::span<const double>(out.particular);
  for (std::size_t i = 0; i < ncons; ++i) out.residual = std::max(out.residual, std::abs(mx[i] - rhs[i]));
  return out;
}

}  // namespace genus1
