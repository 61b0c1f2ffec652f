#include "genus1/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "genus1/error.hpp"
#include "genus1/format.hpp"

namespace genus1 {

namespace {

constexpr double kEtaTol = 1e-12;
constexpr int kGridPerOval = 20000;
constexpr double kPoleLimit = 1e8;

// Smooth closed-loop parametrization of the oval over [lo, hi]:
// x = lo + (hi - lo)(1 - cos s)/2, upper branch for s in (0, pi).
RealPoint oval_point(const Poly& q, double lo, double hi, double s) {
  const double x = lo + (hi - lo) * 0.5 * (1.0 - std::cos(s));
  const double y = std::sqrt(std::max(0.0, -q.eval(x)));
  return {x, std::sin(s) >= 0.0 ? y : -y};
}

struct PhiEval {
  const Poly& q;
  const CurveElem& f;
  RealPoint p;
  double limit;  // value of phi at p itself

  double operator()(const RealPoint& pt) const {
    const double dx = pt.x - p.x;
    const bool same_branch = p.y == 0.0 || (pt.y >= 0.0) == (p.y >= 0.0);
    if (same_branch && std::abs(dx) < 1e-5) return limit;
    const double fv = f.eval(pt.x, pt.y);
    if (fv <= 1e-15) return dx * dx <= 1e-20 ? limit : std::numeric_limits<double>::infinity();
    return dx * dx / fv;
  }
};

double golden_max(const std::function<double(double)>& g, double a, double b, double tol) {
  constexpr double r = 0.6180339887498949;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > tol) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

// Quadratic cofactor of l(x)^2 + q(x) after removing (x - xi)^2, where
// y = l(x) is the non-vertical tangent at p.
Poly tangent_cofactor(const CurveParams& curve, const RealPoint& p) {
  const Poly q = curve.q();
  const double slope = -q.derivative().eval(p.x) / (2.0 * p.y);
  const Poly l{p.y - slope * p.x, slope};
  const Poly quartic = l * l + q;
  const Poly sq{p.x * p.x, -2.0 * p.x, 1.0};
  return divmod(quartic, sq).quotient;
}

CurveElem line_elem(double gx, double gy, const RealPoint& p) {
  return {Poly{-gx * p.x - gy * p.y, gx}, Poly::constant(gy)};
}

}  // namespace

std::string_view to_string(TangentCase c) noexcept {
  switch (c) {
    case TangentCase::Generic: return "generic";
    case TangentCase::DoubleTangent: return "double_tangent";
    case TangentCase::VerticalTangent: return "vertical_tangent";
  }
  return "unknown";
}

CurveElem tangent_line(const CurveParams& curve, const RealPoint& p) {
  if (!on_curve(curve, p)) throw Error(ErrorCode::PointNotOnCurve, "tangent point is not on the curve");
  const Poly q = curve.q();
  const double gx = q.derivative().eval(p.x);
  const double gy = 2.0 * p.y;
  const double norm = std::hypot(gx, gy);
  if (norm < 1e-12) throw Error(ErrorCode::SignAmbiguous, "vanishing gradient: singular point");
  CurveElem f = line_elem(gx / norm, gy / norm, p);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& pt : sample_real_points(curve, 4000)) {
    const double v = f.eval(pt.x, pt.y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  constexpr double tol = 1e-9;
  if (lo >= -tol) return f;
  if (hi <= tol) return f * -1.0;
  throw Error(ErrorCode::TangentNotSupporting, "the tangent line separates points of C(R)");
}

bool is_double_tangent(const CurveParams& curve, const RealPoint& p) {
  if (std::abs(p.y) <= kEtaTol) return false;
  const Poly r = tangent_cofactor(curve, p);
  // r is monic quadratic: a double real root means a second tangency
  // (or contact order four at p when that root is xi).
  const double b = r.coeff(1), c = r.coeff(0);
  const double disc = b * b - 4.0 * c;
  return std::abs(disc) <= 1e-8 * (1.0 + b * b + 4.0 * std::abs(c));
}

PhiMax phi_max(const CurveParams& curve, const CurveElem& f, const RealPoint& p) {
  const Poly q = curve.q();
  double limit = 0.0;
  if (std::abs(p.y) > kEtaTol) {
    // Along the branch y(x) through p: f ~ (1/2) c_y y''(xi) (x - xi)^2.
    const double y1 = -q.derivative().eval(p.x) / (2.0 * p.y);
    const double y2 = -(q.derivative().derivative().eval(p.x) + 2.0 * y1 * y1) / (2.0 * p.y);
    const double cy = f.r.coeff(0);
    const double denom = cy * y2;
    limit = denom > 0.0 ? 2.0 / denom : std::numeric_limits<double>::infinity();
  }
  const PhiEval phi{q, f, p, limit};

  PhiMax best;
  best.gamma = -1.0;
  double best_s = 0.0;
  std::pair<double, double> best_iv{0.0, 0.0};
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const auto& iv : real_branch_intervals(curve)) {
    for (int i = 0; i < kGridPerOval; ++i) {
      const double s = two_pi * i / kGridPerOval;
      const RealPoint pt = oval_point(q, iv.first, iv.second, s);
      const double v = phi(pt);
      if (v > best.gamma) {
        best.gamma = v;
        best.argmax = pt;
        best_s = s;
        best_iv = iv;
      }
    }
  }
  if (!(best.gamma <= kPoleLimit)) {
    throw Error(ErrorCode::DoubleTangentDetected, "phi is unbounded: the tangent touches C twice");
  }
  const double step = two_pi / kGridPerOval;
  auto along = [&](double s) { return phi(oval_point(q, best_iv.first, best_iv.second, s)); };
  const double s_star = golden_max(along, best_s - step, best_s + step, 1e-10);
  const double refined = along(s_star);
  if (refined > best.gamma) {
    best.gamma = refined;
    best.argmax = oval_point(q, best_iv.first, best_iv.second, s_star);
  }
  return best;
}

CurveElem conic_F(const CurveParams& curve, const RealPoint& p) {
  (void)curve;  // alpha = -1, beta = 1 after normalization
  if (std::abs(p.y) <= kEtaTol) throw Error(ErrorCode::EtaZero, "F is only defined for eta != 0");
  const double xi = p.x, eta = p.y;
  constexpr double ab_sum = CurveParams::alpha + CurveParams::beta;
  constexpr double ab_prod = CurveParams::alpha * CurveParams::beta;
  // (xi^2 y - eta x^2) + (alpha + beta)(eta x - xi y) + alpha beta (y - eta)
  return {Poly{-ab_prod * eta, ab_sum * eta, -eta}, Poly::constant(xi * xi - ab_sum * xi + ab_prod)};
}

TangentData tangent_data(const CurveParams& curve, const RealPoint& p) {
  TangentData d;
  d.point = p;
  d.line = tangent_line(curve, p);
  if (std::abs(p.y) <= kEtaTol) {
    d.tag = TangentCase::VerticalTangent;
    d.conic = CurveElem(CurveParams::extreme_root_product(), Poly{});
    const PhiMax m = phi_max(curve, d.line, p);
    d.gamma = m.gamma;
    d.argmax = m.argmax;
    return d;
  }
  d.conic = conic_F(curve, p);
  if (is_double_tangent(curve, p)) {
    d.tag = TangentCase::DoubleTangent;
    d.gamma = std::numeric_limits<double>::infinity();
    const Poly r = tangent_cofactor(curve, p);
    const double xq = -0.5 * r.coeff(1);
    const Poly q = curve.q();
    const double slope = -q.derivative().eval(p.x) / (2.0 * p.y);
    d.argmax = {xq, p.y + slope * (xq - p.x)};
    return d;
  }
  d.tag = TangentCase::Generic;
  const PhiMax m = phi_max(curve, d.line, p);
  d.gamma = m.gamma;
  d.argmax = m.argmax;
  return d;
}

TangentCertificate decompose_tangent(const CurveParams& curve, const RealPoint& p, const SosCertificate& base) {
  const Poly q = curve.q();
  const Poly dpoly = CurveParams::extreme_root_product();
  const CurveElem dtarget(dpoly, Poly{});
  if (base.summands.empty() || (base.target - dtarget).norm_inf() > 1e-9 ||
      (sum_of_squares(base.summands, q) - dtarget).norm_inf() > 1e-6) {
    throw Error(ErrorCode::BaseCertificateInvalid, "base certificate does not represent 1 - x^2");
  }

  TangentCertificate cert;
  cert.curve = curve;
  cert.data = tangent_data(curve, p);
  const TangentData& d = cert.data;

  std::vector<CurveElem> parts;
  for (const auto& g : base.summands) {
    if (d.tag == TangentCase::VerticalTangent) {
      parts.push_back(g);
    } else {
      parts.push_back(curve_divide(elem_mul(d.conic, g, q), dpoly));
    }
  }
  const CurveElem s = sum_of_squares(parts, q);

  const CurveElem lin{Poly{-p.x, 1.0}, Poly{}};
  cert.gamma_coeff = d.tag == TangentCase::DoubleTangent ? 0.0 : 1.0 / d.gamma;
  const CurveElem h = d.line - elem_mul(lin, lin, q) * cert.gamma_coeff;

  double best = -1.0;
  for (const auto& pt : sample_real_points(curve, 400)) {
    const double sv = s.eval(pt.x, pt.y);
    if (std::abs(sv) > best) {
      best = std::abs(sv);
      cert.constant = h.eval(pt.x, pt.y) / sv;
    }
  }

  cert.sos.target = d.line;
  if (cert.gamma_coeff > 0.0) cert.sos.summands.push_back(lin * std::sqrt(cert.gamma_coeff));
  const double c = std::sqrt(std::max(0.0, cert.constant));
  for (const auto& u : parts) cert.sos.summands.push_back(u * c);
  cert.sos.residual = (sum_of_squares(cert.sos.summands, q) - d.line).norm_inf();
  return cert;
}

std::string serialize(const TangentCertificate& cert) {
  auto elem = [](const CurveElem& e) {
    return "p=" + format_list(e.p.coeffs(), 17) + " r=" + format_list(e.r.coeffs(), 17);
  };
  std::string out;
  out += "curve a=" + format_number(cert.curve.a) + " b=" + format_number(cert.curve.b) + '\n';
  out += "point x=" + format_number(cert.data.point.x) + " y=" + format_number(cert.data.point.y) + '\n';
  out += "case " + std::string(to_string(cert.data.tag)) + '\n';
  out += "gamma " + (std::isinf(cert.data.gamma) ? std::string("inf") : format_number(cert.data.gamma)) + '\n';
  out += "argmax x=" + format_number(cert.data.argmax.x) + " y=" + format_number(cert.data.argmax.y) + '\n';
  out += "gamma_coeff " + format_number(cert.gamma_coeff) + '\n';
  out += "constant " + format_number(cert.constant) + '\n';
  out += "line " + elem(cert.data.line) + '\n';
  out += "conic " + elem(cert.data.conic) + '\n';
  out += "summands " + std::to_string(cert.sos.summands.size()) + '\n';
  for (const auto& g : cert.sos.summands) out += "summand " + elem(g) + '\n';
  out += "residual " + format_number(cert.sos.residual) + '\n';
  return out;
}

}  // namespace genus1
