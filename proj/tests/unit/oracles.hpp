#pragma once

// Small independent reference computations used to cross-check the library.
// Nothing here calls back into the code under test except for plain data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "genus1/curve.hpp"
#include "genus1/linalg.hpp"
#include "genus1/poly.hpp"

namespace oracle {

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Determinant by Gaussian elimination with partial pivoting in long double.
inline long double determinant(std::vector<std::vector<long double>> m) {
  const std::size_t n = m.size();
  long double det = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    if (m[piv][col] == 0.0L) return 0.0L;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Resultant of p and p' from the Sylvester matrix; zero iff p has a repeated root.
inline long double discriminant_resultant(const std::vector<double>& p) {
  const int n = static_cast<int>(p.size()) - 1;
  std::vector<double> dp;
  for (int i = 1; i <= n; ++i) dp.push_back(i * p[static_cast<std::size_t>(i)]);
  const int m = n - 1;
  const int size = n + m;
  std::vector<std::vector<long double>> s(static_cast<std::size_t>(size),
                                          std::vector<long double>(static_cast<std::size_t>(size), 0.0L));
  // Rows hold coefficients highest degree first.
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[r][r + i] = p[static_cast<std::size_t>(n - i)];
  }
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[m + r][r + i] = dp[static_cast<std::size_t>(m - i)];
  }
  return determinant(std::move(s));
}

// Sign changes of p over a uniform grid of (lo, hi]; counts simple roots that
// are further apart than the grid spacing.
inline int grid_sign_changes(const std::vector<double>& p, double lo, double hi, int samples) {
  int count = 0;
  double prev = horner(p, lo + (hi - lo) / samples * 0.5);
  for (int i = 1; i < samples; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / samples;
    const double v = horner(p, x);
    if ((v > 0.0 && prev < 0.0) || (v < 0.0 && prev > 0.0)) ++count;
    if (v != 0.0) prev = v;
  }
  return count;
}

// Product of linear factors (x - r_i), coefficients constant term first.
inline std::vector<double> from_roots(const std::vector<double>& roots, double lead = 1.0) {
  std::vector<double> c{lead};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

inline std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Value of a basis monomial x^i or x^i y at a point.
inline double monomial_value(const genus1::Monomial& m, double x, double y) {
  return std::pow(x, m.x_power) * (m.has_y ? y : 1.0);
}

// Points on the real locus computed from scratch: x on a grid of the branch
// intervals, y = +-sqrt(-q(x)).
inline std::vector<genus1::RealPoint> curve_points(double a, double b, int per_branch) {
  auto q = [&](double x) { return (x * x - 1.0) * (x * x + a * x + b); };
  std::vector<genus1::RealPoint> out;
  const int n = 4000;
  double prev_x = -3.0;
  bool prev_in = q(prev_x) <= 0.0;
  std::vector<std::pair<double, double>> ivs;
  double start = prev_in ? prev_x : 0.0;
  for (int i = 1; i <= n; ++i) {
    const double x = -3.0 + 6.0 * i / n;
    const bool in = q(x) <= 0.0;
    if (in && !prev_in) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) <= 0.0 ? hi : lo) = mid;
      }
      start = hi;
    }
    if (!in && prev_in) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) <= 0.0 ? lo : hi) = mid;
      }
      ivs.emplace_back(start, lo);
    }
    prev_x = x;
    prev_in = in;
  }
  for (const auto& [lo, hi] : ivs) {
    for (int i = 0; i <= per_branch; ++i) {
      const double t = static_cast<double>(i) / per_branch;
      const double x = lo + (hi - lo) * 0.5 * (1.0 - std::cos(t * 3.141592653589793));
      const double y = std::sqrt(std::max(0.0, -q(x)));
      out.push_back({x, y});
      if (y > 0.0) out.push_back({x, -y});
    }
  }
  return out;
}

// sum_ij G_ij b_i(pt) b_j(pt).
inline double gram_value(const genus1::DeltaBasis& basis, const genus1::SymMatrix& g, double x, double y) {
  std::vector<double> v;
  for (const auto& m : basis.elements) v.push_back(monomial_value(m, x, y));
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) acc += g(i, j) * v[i] * v[j];
  }
  return acc;
}

// Random symmetric PSD matrix B B^T with B of the given column count.
inline genus1::SymMatrix random_psd(std::size_t n, std::size_t rank, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  genus1::Matrix b(n, rank);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rank; ++j) b(i, j) = nd(rng);
  }
  genus1::SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k) acc += b(i, k) * b(j, k);
      out.set(i, j, acc);
    }
  }
  return out;
}

// Smallest eigenvalue of a small symmetric matrix by bisection on Sylvester
// inertia (LDL^T sign count). Independent of the Jacobi routine.
inline double min_eigenvalue(const genus1::SymMatrix& s) {
  const std::size_t n = s.dim();
  auto negatives_below = [&](double shift) {
    std::vector<std::vector<long double>> m(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = s(i, j) - (i == j ? shift : 0.0);
    }
    int neg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      long double d = m[k][k];
      if (d == 0.0L) d = 1e-300L;
      if (d < 0.0L) ++neg;
      for (std::size_t i = k + 1; i < n; ++i) {
        const long double f = m[i][k] / d;
        for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
      }
    }
    return neg;
  };
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(s(i, j));
    bound = std::max(bound, row);
  }
  double lo = -bound - 1.0, hi = bound + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (negatives_below(mid) >= 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
