#include "genus1/poly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "genus1/error.hpp"

namespace genus1 {

Poly::Poly(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(double c) { return Poly(std::vector<double>{c}); }

Poly Poly::monomial(int power, double coeff) {
  if (power < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial power");
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = coeff;
  return Poly(std::move(c));
}

void Poly::trim() noexcept {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

int Poly::degree() const noexcept {
  return c_.empty() ? kMinusInfinity : static_cast<int>(c_.size()) - 1;
}

double Poly::coeff(int i) const noexcept {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<std::size_t>(i)];
}

double Poly::eval(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

long double Poly::eval_extended(long double x) const noexcept {
  long double acc = 0.0L;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Poly(std::move(d));
}

double Poly::norm_inf() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Poly Poly::normalized(double rel_tol) const {
  const double cut = rel_tol * norm_inf();
  std::vector<double> c = c_;
  for (double& v : c) {
    if (std::abs(v) <= cut) v = 0.0;
  }
  return Poly(std::move(c));
}

Poly Poly::compose_affine(double scale, double shift) const {
  const Poly inner{shift, scale};
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = poly_mul(acc, inner) + Poly::constant(*it);
  }
  return acc;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& v : c_) v *= s;
  trim();
  return *this;
}

Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Poly(std::move(out));
}

DivMod divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
  if (num.degree() < den.degree()) return {Poly{}, num};
  std::vector<double> rem = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dn = d.size() - 1;
  std::vector<double> quot(rem.size() - dn, 0.0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const double factor = rem[k + dn] / d.back();
    quot[k] = factor;
    for (std::size_t j = 0; j <= dn; ++j) rem[k + j] -= factor * d[j];
    rem[k + dn] = 0.0;
  }
  rem.resize(dn);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

namespace {

Poly unit_scaled(const Poly& p) {
  const double n = p.norm_inf();
  return n > 0.0 ? p * (1.0 / n) : p;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b, double tol) {
  Poly u = unit_scaled(a.normalized());
  Poly v = unit_scaled(b.normalized());
  if (u.degree() < v.degree()) std::swap(u, v);
  if (v.is_zero()) return u;
  while (true) {
    Poly r = divmod(u, v).remainder.normalized();
    if (r.is_zero() || r.norm_inf() <= tol) return v;
    u = std::move(v);
    v = unit_scaled(r);
  }
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> chain;
  Poly a = unit_scaled(p.normalized());
  if (a.is_zero()) return chain;
  chain.push_back(a);
  Poly b = unit_scaled(a.derivative().normalized());
  while (!b.is_zero()) {
    chain.push_back(b);
    if (b.degree() == 0) break;
    Poly r = -divmod(chain[chain.size() - 2], b).remainder;
    // Remainders that are pure rounding noise end the chain (p had a repeated factor).
    if (r.norm_inf() <= 1e-13) break;
    b = unit_scaled(r.normalized());
  }
  return chain;
}

namespace {

int sign_variations(std::span<const Poly> chain, double x) {
  int variations = 0;
  int last = 0;
  for (const Poly& s : chain) {
    const double v = s.eval(x);
    const int sg = (v > 0.0) - (v < 0.0);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++variations;
    last = sg;
  }
  return variations;
}

double polish_root(const Poly& g, const Poly& dg, double lo, double hi, double tol) {
  double glo = g.eval(lo);
  if (glo == 0.0) return lo;
  double ghi = g.eval(hi);
  if (ghi == 0.0) return hi;
  // A simple root of the square-free part changes sign on (lo, hi]; fall back
  // to the midpoint if rounding hides the change.
  if ((glo > 0.0) == (ghi > 0.0)) return 0.5 * (lo + hi);
  const double width_goal = std::max(tol * 0.25, 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo) + std::abs(hi)));
  while (hi - lo > width_goal) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g.eval(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double d = dg.eval(x);
    if (d == 0.0) break;
    const double next = x - g.eval(x) / d;
    if (!(next >= lo && next <= hi)) break;
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace

int sturm_count(std::span<const Poly> chain, double lo, double hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::vector<double> real_roots(const Poly& p, double lo, double hi, double tol) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "real_roots of the zero polynomial");
  if (!(lo < hi)) throw Error(ErrorCode::DegenerateInterval, "require lo < hi");
  if (p.degree() <= 0) return {};

  const Poly pn = p.normalized();
  const Poly g_common = poly_gcd(pn, pn.derivative(), 1e-10);
  Poly squarefree = g_common.degree() > 0 ? divmod(pn, g_common).quotient.normalized() : pn;
  const Poly dsq = squarefree.derivative();
  const auto chain = sturm_sequence(squarefree);

  // Widen slightly on the left so that a root sitting exactly at lo is counted.
  const double lo_open = lo - std::max(tol, 1e-12) * (1.0 + std::abs(lo));
  std::vector<double> roots;
  struct Interval {
    double a, b;
    int count;
  };
  std::vector<Interval> stack{{lo_open, hi, sturm_count(chain, lo_open, hi)}};
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    if (iv.count <= 0) continue;
    if (iv.count == 1) {
      roots.push_back(polish_root(squarefree, dsq, iv.a, iv.b, tol));
      continue;
    }
    const double mid = 0.5 * (iv.a + iv.b);
    if (iv.b - iv.a <= 0.25 * tol || mid == iv.a || mid == iv.b) {
      // Unresolvable cluster at this tolerance.
      roots.push_back(mid);
      continue;
    }
    const int left = sturm_count(chain, iv.a, mid);
    stack.push_back({mid, iv.b, iv.count - left});
    stack.push_back({iv.a, mid, left});
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots) {
    if (r < lo - tol || r > hi) continue;
    out.push_back(std::clamp(r, lo, hi));
  }
  return out;
}

bool is_separable(const Poly& p, double tol) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "is_separable of the zero polynomial");
  if (p.degree() <= 1) return true;
  return poly_gcd(p, p.derivative(), tol).degree() == 0;
}

}  // namespace genus1
