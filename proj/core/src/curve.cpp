#include "genus1/curve.hpp"

#include <cmath>
#include <sstream>

#include "genus1/error.hpp"

namespace genus1 {

Poly CurveParams::q() const { return poly_mul(Poly{-1.0, 0.0, 1.0}, h()); }

bool in_parameter_set(double a, double b) noexcept {
  const double disc = a * a - 4.0 * b;
  if (disc < 0.0) return true;
  // Two real roots of h: both must lie strictly inside (-1, 1), which is
  // h(+-1) > 0 and |vertex| < 1.
  return disc > 0.0 && std::abs(a) < std::min(2.0, b + 1.0);
}

void require_parameter_set(double a, double b) {
  if (!in_parameter_set(a, b)) {
    std::ostringstream msg;
    msg << "(a, b) = (" << a << ", " << b << ") is not in the parameter set P";
    throw Error(ErrorCode::NotInP, msg.str());
  }
}

NormalizedQuartic normalize_quartic(const Poly& q, double tol) {
  if (q.degree() != 4 || std::abs(q.leading() - 1.0) > tol) {
    throw Error(ErrorCode::NotQuarticMonic, "expected a monic polynomial of degree 4");
  }
  if (!is_separable(q, tol)) throw Error(ErrorCode::NotSeparable, "quartic has a multiple root");
  double cauchy = 0.0;
  for (int i = 0; i < 4; ++i) cauchy = std::max(cauchy, std::abs(q.coeff(i)));
  cauchy += 1.0;
  const auto roots = real_roots(q, -cauchy, cauchy, 1e-13);
  if (roots.empty()) throw Error(ErrorCode::NotIndefinite, "quartic has no real root; C(R) is empty");

  NormalizedQuartic out;
  out.alpha = roots.front();
  out.beta = roots.back();
  out.scale = 0.5 * (out.beta - out.alpha);
  out.shift = 0.5 * (out.alpha + out.beta);
  out.y_scale = out.scale * out.scale;
  const double s4 = out.y_scale * out.y_scale;
  const Poly normalized = q.compose_affine(out.scale, out.shift) * (1.0 / s4);
  const Poly h = divmod(normalized, Poly{-1.0, 0.0, 1.0}).quotient;
  out.params = {h.coeff(1), h.coeff(0)};
  return out;
}

CurveElem::CurveElem(const Monomial& m) {
  if (m.has_y) {
    r = Poly::monomial(m.x_power);
  } else {
    p = Poly::monomial(m.x_power);
  }
}

std::string Monomial::name() const {
  std::string out;
  if (x_power == 0 && !has_y) return "1";
  if (x_power == 1) out = "x";
  if (x_power > 1) out = "x^" + std::to_string(x_power);
  if (has_y) out += out.empty() ? "y" : "*y";
  return out;
}

CurveElem elem_mul(const CurveElem& e1, const CurveElem& e2, const Poly& q) {
  CurveElem out;
  out.p = poly_mul(e1.p, e2.p) - poly_mul(q, poly_mul(e1.r, e2.r));
  out.r = poly_mul(e1.p, e2.r) + poly_mul(e2.p, e1.r);
  return out;
}

int delta(const CurveElem& e) {
  if (e.is_zero()) throw Error(ErrorCode::ZeroElement, "delta of the zero element");
  const int dp = e.p.degree();
  const int dr = e.r.is_zero() ? kMinusInfinity : e.r.degree() + 2;
  return std::max(dp, dr);
}

CurveElem curve_divide(const CurveElem& e, const Poly& d, double tol) {
  if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  const auto [qp, rp] = divmod(e.p, d);
  const auto [qr, rr] = divmod(e.r, d);
  const double scale = std::max(e.norm_inf(), std::numeric_limits<double>::min());
  const double rem = std::max(rp.norm_inf(), rr.norm_inf());
  if (rem > tol * scale) {
    std::ostringstream msg;
    msg << "remainder norm " << rem << " exceeds " << tol * scale;
    throw Error(ErrorCode::NotDivisible, msg.str());
  }
  return {qp, qr};
}

CurveElem sum_of_squares(const std::vector<CurveElem>& summands, const Poly& q) {
  CurveElem acc;
  for (const auto& g : summands) acc += elem_mul(g, g, q);
  return acc;
}

int DeltaBasis::index_of(const Monomial& m) const noexcept {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == m) return static_cast<int>(i);
  }
  return -1;
}

DeltaBasis delta_basis(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "delta basis bound must be >= 1");
  DeltaBasis basis;
  basis.bound = n;
  for (int i = 0; i <= n; ++i) basis.elements.push_back({i, false});
  for (int j = 0; j <= n - 2; ++j) basis.elements.push_back({j, true});
  return basis;
}

std::vector<double> delta_coordinates(const CurveElem& e, int n) {
  if (!e.is_zero() && delta(e) > n) {
    throw Error(ErrorCode::InvalidArgument, "element exceeds the requested delta bound");
  }
  std::vector<double> out(static_cast<std::size_t>(2 * n), 0.0);
  for (int i = 0; i <= e.p.degree(); ++i) out[static_cast<std::size_t>(i)] = e.p.coeff(i);
  for (int j = 0; j <= e.r.degree(); ++j) out[static_cast<std::size_t>(n + 1 + j)] = e.r.coeff(j);
  return out;
}

CurveElem from_delta_coordinates(const std::vector<double>& coords, int n) {
  if (coords.size() != static_cast<std::size_t>(2 * n)) {
    throw Error(ErrorCode::InvalidArgument, "coordinate vector length must be 2n");
  }
  std::vector<double> p(coords.begin(), coords.begin() + n + 1);
  std::vector<double> r(coords.begin() + n + 1, coords.end());
  return {Poly(std::move(p)), Poly(std::move(r))};
}

std::vector<std::pair<double, double>> real_branch_intervals(const CurveParams& c) {
  const Poly q = c.q();
  double bound = 1.0;
  for (int i = 0; i < 4; ++i) bound = std::max(bound, std::abs(q.coeff(i)));
  bound += 1.0;
  const auto roots = real_roots(q, -bound, bound, 1e-14);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const double mid = 0.5 * (roots[i] + roots[i + 1]);
    if (q.eval(mid) < 0.0) out.emplace_back(roots[i], roots[i + 1]);
  }
  return out;
}

std::vector<RealPoint> sample_real_points(const CurveParams& c, int m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "need at least two sample points");
  const auto intervals = real_branch_intervals(c);
  if (intervals.empty()) throw Error(ErrorCode::EmptyRealLocus, "q > 0 on all of R");
  double total = 0.0;
  for (const auto& [u, v] : intervals) total += v - u;
  const Poly q = c.q();
  std::vector<RealPoint> pts;
  for (const auto& [u, v] : intervals) {
    const int share = std::max(2, static_cast<int>(std::ceil(m * (v - u) / total)));
    int nodes = (share + 1) / 2 + 1;
    if (nodes % 2 == 0) ++nodes;
    nodes = std::max(nodes, 3);
    pts.push_back({u, 0.0});
    for (int i = 1; i + 1 < nodes; ++i) {
      const double x = u + (v - u) * static_cast<double>(i) / static_cast<double>(nodes - 1);
      const double y = std::sqrt(std::max(0.0, -q.eval(x)));
      pts.push_back({x, y});
      pts.push_back({x, -y});
    }
    pts.push_back({v, 0.0});
  }
  return pts;
}

bool on_curve(const CurveParams& c, const RealPoint& pt, double tol) {
  const Poly q = c.q();
  return std::abs(pt.y * pt.y + q.eval(pt.x)) <= tol * (1.0 + q.norm_inf());
}

}  // namespace genus1
