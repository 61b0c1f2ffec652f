#pragma once

#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace genus1 {

/// Degree of the zero polynomial (and δ of the zero curve element).
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min();

/// Relative threshold below which coefficients are pruned by Poly::normalized().
inline constexpr double kCoeffPruneRel = 1e-12;

/// Univariate real polynomial, coefficients stored constant term first.
///
/// Exact trailing zeros are always trimmed, so a nonzero Poly has a nonzero
/// leading coefficient. Tiny-but-nonzero coefficients survive arithmetic;
/// call normalized() to prune them before gcd / Sturm style computations.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<double> coeffs);
  explicit Poly(std::vector<double> coeffs);

  static Poly constant(double c);
  static Poly monomial(int power, double coeff = 1.0);

  bool is_zero() const noexcept { return c_.empty(); }
  /// kMinusInfinity for the zero polynomial.
  int degree() const noexcept;
  double coeff(int i) const noexcept;
  double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }
  const std::vector<double>& coeffs() const noexcept { return c_; }

  double eval(double x) const noexcept;
  long double eval_extended(long double x) const noexcept;
  Poly derivative() const;
  double norm_inf() const noexcept;

  Poly normalized(double rel_tol = kCoeffPruneRel) const;
  /// p(scale * x + shift).
  Poly compose_affine(double scale, double shift) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(double s);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator-(Poly p) { return p *= -1.0; }
  friend Poly operator*(Poly p, double s) { return p *= s; }
  friend Poly operator*(double s, Poly p) { return p *= s; }
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() noexcept;

  std::vector<double> c_;
};

Poly poly_mul(const Poly& p, const Poly& q);
inline Poly operator*(const Poly& p, const Poly& q) { return poly_mul(p, q); }

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division; throws InvalidArgument on a zero divisor.
DivMod divmod(const Poly& num, const Poly& den);

/// gcd by the Euclidean remainder sequence. Remainders are rescaled to unit
/// sup-norm and treated as zero once their norm drops below `tol`.
Poly poly_gcd(const Poly& a, const Poly& b, double tol);

/// Sturm chain p, p', -rem(p, p'), ... with each member rescaled to unit sup-norm.
std::vector<Poly> sturm_sequence(const Poly& p);

/// Number of distinct real roots of chain[0] in the half-open interval (lo, hi].
int sturm_count(std::span<const Poly> chain, double lo, double hi);

/// Distinct real roots of p in [lo, hi], sorted ascending.
std::vector<double> real_roots(const Poly& p, double lo, double hi, double tol);

/// True iff gcd(p, p') is a nonzero constant.
bool is_separable(const Poly& p, double tol);

}  // namespace genus1
