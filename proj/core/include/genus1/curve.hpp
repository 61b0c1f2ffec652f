#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "genus1/poly.hpp"

namespace genus1 {

/// Normalized genus-one curve y^2 + (x^2 - 1)(x^2 + a x + b) = 0.
///
/// After normalization the extreme real roots of q are alpha = -1 and
/// beta = +1, and (a, b) ranges over the parameter set P (see
/// in_parameter_set).
struct CurveParams {
  double a = 0.0;
  double b = 1.0;

  static constexpr double alpha = -1.0;
  static constexpr double beta = 1.0;

  Poly h() const { return Poly{b, a, 1.0}; }
  /// q = (x^2 - 1) h.
  Poly q() const;
  /// (x - alpha)(beta - x) = 1 - x^2, the function whose theta is N_C.
  static Poly extreme_root_product() { return Poly{1.0, 0.0, -1.0}; }
};

/// (a, b) in P: h has no real root, or two simple real roots strictly inside
/// (-1, 1).
bool in_parameter_set(double a, double b) noexcept;

/// Throws NotInP when (a, b) lies outside P.
void require_parameter_set(double a, double b);

/// Result of mapping an arbitrary separable indefinite monic quartic to the
/// normal form. Original coordinates are x = scale * X + shift, y = y_scale * Y.
struct NormalizedQuartic {
  CurveParams params;
  double scale = 1.0;
  double shift = 0.0;
  double y_scale = 1.0;
  double alpha = -1.0;  ///< smallest real root of the input quartic
  double beta = 1.0;    ///< largest real root of the input quartic
};

NormalizedQuartic normalize_quartic(const Poly& q, double tol = 1e-9);

/// Monomial x^i or x^i * y in R[C]; the building block of delta bases.
struct Monomial {
  int x_power = 0;
  bool has_y = false;

  int delta() const noexcept { return x_power + (has_y ? 2 : 0); }
  std::string name() const;
  auto operator<=>(const Monomial&) const = default;
};

/// Element p(x) + r(x) * y of R[C], always kept reduced (no y^2).
struct CurveElem {
  Poly p;
  Poly r;

  CurveElem() = default;
  CurveElem(Poly p_part, Poly r_part) : p(std::move(p_part)), r(std::move(r_part)) {}
  explicit CurveElem(const Monomial& m);

  static CurveElem constant(double c) { return {Poly::constant(c), Poly{}}; }
  static CurveElem x() { return {Poly{0.0, 1.0}, Poly{}}; }
  static CurveElem y() { return {Poly{}, Poly::constant(1.0)}; }

  bool is_zero() const noexcept { return p.is_zero() && r.is_zero(); }
  double eval(double x, double y) const noexcept { return p.eval(x) + r.eval(x) * y; }
  /// max(|coefficients|) over both components.
  double norm_inf() const noexcept { return std::max(p.norm_inf(), r.norm_inf()); }

  CurveElem& operator+=(const CurveElem& o) {
    p += o.p;
    r += o.r;
    return *this;
  }
  CurveElem& operator-=(const CurveElem& o) {
    p -= o.p;
    r -= o.r;
    return *this;
  }
  CurveElem& operator*=(double s) {
    p *= s;
    r *= s;
    return *this;
  }
  friend CurveElem operator+(CurveElem a, const CurveElem& b) { return a += b; }
  friend CurveElem operator-(CurveElem a, const CurveElem& b) { return a -= b; }
  friend CurveElem operator*(CurveElem a, double s) { return a *= s; }
  friend CurveElem operator*(double s, CurveElem a) { return a *= s; }
  friend bool operator==(const CurveElem&, const CurveElem&) = default;
};

/// Product in R[C], rewriting y^2 -> -q.
CurveElem elem_mul(const CurveElem& e1, const CurveElem& e2, const Poly& q);

/// delta(p + r y) = max(deg p, 2 + deg r). Throws ZeroElement for 0.
int delta(const CurveElem& e);

/// Componentwise exact division by d in R[x]; NotDivisible when either
/// remainder exceeds tol * ||e||.
CurveElem curve_divide(const CurveElem& e, const Poly& d, double tol = 1e-9);

/// Sum of squares of the given elements, reduced.
CurveElem sum_of_squares(const std::vector<CurveElem>& summands, const Poly& q);

/// Basis [1, x, ..., x^n, y, x y, ..., x^(n-2) y] of {f : delta(f) <= n}.
struct DeltaBasis {
  int bound = 1;
  std::vector<Monomial> elements;

  std::size_t size() const noexcept { return elements.size(); }
  /// Position of a monomial inside the basis, or -1.
  int index_of(const Monomial& m) const noexcept;
};

DeltaBasis delta_basis(int n);

/// Coordinates of e in delta_basis(n); throws InvalidArgument if delta(e) > n.
std::vector<double> delta_coordinates(const CurveElem& e, int n);
CurveElem from_delta_coordinates(const std::vector<double>& coords, int n);

struct RealPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Maximal x-intervals on which q <= 0, i.e. the x-shadows of the ovals of C(R).
std::vector<std::pair<double, double>> real_branch_intervals(const CurveParams& c);

/// At least m points of C(R) covering every oval on both y-branches,
/// including all branch endpoints (y = 0).
std::vector<RealPoint> sample_real_points(const CurveParams& c, int m);

/// Whether |y^2 + q(x)| <= tol * (1 + ||q||).
bool on_curve(const CurveParams& c, const RealPoint& pt, double tol = 1e-9);

}  // namespace genus1
