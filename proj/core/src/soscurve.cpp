#include "genus1/soscurve.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "genus1/error.hpp"

namespace genus1 {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Packed-upper position (i <= j) of a Gram entry inside a variable vector.
std::size_t svec_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

// Orthonormal svec parametrization: off-diagonal variables carry sqrt(2), so
// Frobenius geometry of Grams matches the Euclidean one of variables.
SymMatrix smat(std::span<const double> v, std::size_t n, std::size_t offset = 0) {
  SymMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double x = v[offset + svec_index(n, i, j)];
      g.set(i, j, i == j ? x : x / kSqrt2);
    }
  }
  return g;
}

// Gram pencil G(z) = G(p) + sum_k z_k G(N_k) over a block layout.
PencilProblem gram_pencil(const AffineSolution& sol, const std::vector<std::size_t>& blocks) {
  std::size_t total = 0;
  for (auto b : blocks) total += b;
  auto build = [&](std::span<const double> v) {
    SymMatrix out(total);
    std::size_t off = 0, var_off = 0;
    for (auto b : blocks) {
      const SymMatrix g = smat(v, b, var_off);
      for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = i; j < b; ++j) out.set(off + i, off + j, g(i, j));
      off += b;
      var_off += b * (b + 1) / 2;
    }
    return out;
  };
  PencilProblem p;
  p.constant = build(sol.particular);
  const std::size_t nv = sol.null_basis.rows();
  std::vector<double> col(nv);
  for (std::size_t k = 0; k < sol.null_basis.cols(); ++k) {
    for (std::size_t r = 0; r < nv; ++r) col[r] = sol.null_basis(r, k);
    p.coefficients.push_back(build(col));
  }
  return p;
}

SymMatrix sub_block(const SymMatrix& m, std::size_t off, std::size_t n) {
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.set(i, j, m(off + i, off + j));
  return out;
}

SymMatrix clip_psd(const SymMatrix& g, double* clipped_mass = nullptr) {
  const auto eig = jacobi_eigen(g);
  const std::size_t n = g.dim();
  SymMatrix out(n);
  double mass = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= 0.0) {
      mass += -lam;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) out.add(i, j, lam * eig.vectors(i, k) * eig.vectors(j, k));
  }
  if (clipped_mass) *clipped_mass = mass;
  return out;
}

double min_eig(const SymMatrix& g) { return g.dim() ? min_eigenvalue(g.dense()) : 0.0; }

// Products basis_i * basis_j, reduced.
std::vector<CurveElem> basis_products(const DeltaBasis& basis, const Poly& q) {
  const std::size_t n = basis.size();
  std::vector<CurveElem> out(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const CurveElem bi(basis.elements[i]);
    for (std::size_t j = i; j < n; ++j) out[svec_index(n, i, j)] = elem_mul(bi, CurveElem(basis.elements[j]), q);
  }
  return out;
}

CurveElem gram_expand(const SymMatrix& g, const std::vector<CurveElem>& products) {
  const std::size_t n = g.dim();
  CurveElem out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double w = (i == j ? 1.0 : 2.0) * g(i, j);
      if (w != 0.0) out += products[svec_index(n, i, j)] * w;
    }
  }
  return out;
}

// Chebyshev products T_i T_j = (T_{i+j} + T_{|i-j|}) / 2 on coefficient vectors.
std::vector<double> cheb_mul(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.empty() || q.empty()) return {};
  std::vector<double> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double v = 0.5 * p[i] * q[j];
      out[i + j] += v;
      out[i > j ? i - j : j - i] += v;
    }
  }
  return out;
}

// Chebyshev coefficients of sum_ij G_ij T_i T_j.
std::vector<double> cheb_gram_poly(const SymMatrix& g) {
  const std::size_t k = g.dim();
  std::vector<double> out(2 * k - 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out[i + j] += 0.5 * g(i, j);
      out[i > j ? i - j : j - i] += 0.5 * g(i, j);
    }
  }
  return out;
}

std::vector<double> monomial_to_chebyshev(const Poly& p) {
  // x^n in Chebyshev terms, built by x T_k = (T_{k+1} + T_{|k-1|}) / 2.
  const int deg = p.degree();
  if (deg < 0) return {};
  std::vector<double> out(static_cast<std::size_t>(deg) + 1, 0.0);
  std::vector<double> xn{1.0};
  for (int n = 0; n <= deg; ++n) {
    for (std::size_t k = 0; k < xn.size(); ++k) out[k] += p.coeff(n) * xn[k];
    xn = cheb_mul(xn, {0.0, 1.0});
  }
  return out;
}

}  // namespace

Poly chebyshev_to_monomial(const std::vector<double>& cheb) {
  Poly out;
  Poly prev{1.0};
  Poly cur{0.0, 1.0};
  const Poly two_x{0.0, 2.0};
  for (std::size_t k = 0; k < cheb.size(); ++k) {
    if (k >= 2) {
      Poly next = two_x * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    out += (k == 0 ? prev : cur) * cheb[k];
  }
  return out;
}

SosOutcome sos_feasible(const CurveElem& f, int d, const CurveParams& curve, const SosOptions& options) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "sos_feasible needs d >= 1");
  SosOutcome out;
  if (!f.is_zero() && delta(f) > 2 * d) {
    // delta(sum g^2) = 2 max delta(g): degree alone rules it out.
    out.status = SosStatus::Infeasible;
    return out;
  }
  const Poly q = curve.q();
  const DeltaBasis basis = delta_basis(d);
  const std::size_t n = basis.size();
  const std::size_t nv = n * (n + 1) / 2;
  const auto products = basis_products(basis, q);

  const std::size_t rows = 4 * static_cast<std::size_t>(d);
  Matrix m(rows, nv);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto coords = delta_coordinates(products[svec_index(n, i, j)], 2 * d);
      const double w = i == j ? 1.0 : kSqrt2;
      for (std::size_t r = 0; r < rows; ++r) m(r, svec_index(n, i, j)) = w * coords[r];
    }
  }
  const auto rhs = delta_coordinates(f, 2 * d);
  const AffineSolution sol = solve_affine(m, rhs);
  const double scale = 1.0 + f.norm_inf();
  if (sol.residual > 1e-9 * scale) {
    out.status = SosStatus::Infeasible;
    return out;
  }

  const PencilProblem pencil = gram_pencil(sol, {n});
  out.sdp = solve_max_margin(pencil, options.sdp);
  if (out.sdp.status == SdpStatus::Infeasible) {
    out.status = SosStatus::Infeasible;
    return out;
  }

  double clipped = 0.0;
  SymMatrix g = pencil.evaluate(out.sdp.z);
  if (out.sdp.status != SdpStatus::Feasible) g = clip_psd(g, &clipped);
  const CurveElem expanded = gram_expand(g, products);
  const double residual = (expanded - f).norm_inf();

  const bool accept = out.sdp.status == SdpStatus::Feasible || residual <= options.verify_tol * scale;
  if (!accept) {
    out.status = SosStatus::Indeterminate;
    return out;
  }
  GramCertificate cert;
  cert.basis = basis;
  cert.gram = g;
  cert.target = f;
  cert.residual = residual;
  cert.min_eigenvalue = min_eig(g);
  cert.margin = out.sdp.margin;
  out.status = SosStatus::Feasible;
  out.certificate = std::move(cert);
  return out;
}

std::optional<int> theta(const CurveElem& f, const CurveParams& curve, int d_max, const SosOptions& options) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroElement, "theta of the zero element");
  const int df = delta(f);
  if (df == 0) {
    if (f.p.coeff(0) > 0.0) return 0;
    return std::nullopt;
  }
  bool undecided = false;
  for (int d = std::max(1, (df + 1) / 2); d <= d_max; ++d) {
    const SosOutcome r = sos_feasible(f, d, curve, options);
    if (r.status == SosStatus::Feasible) return d;
    if (r.status == SosStatus::Indeterminate) undecided = true;
  }
  if (undecided) throw Error(ErrorCode::BudgetExceeded, "theta undecided up to d_max");
  return std::nullopt;
}

SosCertificate extract_sos(const GramCertificate& g, const Poly& q) {
  const std::size_t n = g.gram.dim();
  const auto eig = jacobi_eigen(g.gram);
  SosCertificate out;
  out.target = g.target;
  double clipped = 0.0;
  const double top = n ? std::max(0.0, eig.values.front()) : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (lam <= 0.0) {
      clipped += -lam;
      continue;
    }
    if (lam <= 1e-15 * top) continue;
    std::vector<double> coords(n);
    for (std::size_t i = 0; i < n; ++i) coords[i] = std::sqrt(lam) * eig.vectors(i, k);
    CurveElem gv;
    for (std::size_t i = 0; i < n; ++i) {
      if (coords[i] != 0.0) gv += CurveElem(g.basis.elements[i]) * coords[i];
    }
    out.summands.push_back(std::move(gv));
  }
  const CurveElem expanded = sum_of_squares(out.summands, q);
  out.residual = clipped + (expanded - g.target).norm_inf();
  return out;
}

SdpResult umschreib_sdp(const CurveParams& curve, int d, StabilityResult* out, const SdpOptions& options) {
  if (d < 0 || d % 2 != 0) throw Error(ErrorCode::InvalidArgument, "umschreib degree must be even and >= 0");
  const std::size_t k = static_cast<std::size_t>(d / 2 + 1);
  const std::size_t nk = k * (k + 1) / 2;
  const std::size_t rows = static_cast<std::size_t>(d + 3);
  const auto h = monomial_to_chebyshev(curve.h());
  const auto f = monomial_to_chebyshev(Poly{-1.0, 0.0, 1.0});

  // Column for each svec variable: Chebyshev coefficients of its
  // contribution to t h - s f. Variables [svec(S), svec(T)].
  Matrix m(rows, 2 * nk);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      SymMatrix unit(k);
      unit.set(i, j, i == j ? 1.0 : 1.0 / kSqrt2);
      const auto base = cheb_gram_poly(unit);
      const auto sf = cheb_mul(base, f);
      const auto th = cheb_mul(base, h);
      const std::size_t col = svec_index(k, i, j);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r < sf.size()) m(r, col) = -sf[r];
        if (r < th.size()) m(r, nk + col) = th[r];
      }
    }
  }
  std::vector<double> rhs(rows, 0.0);
  rhs[0] = 1.0;
  const AffineSolution sol = solve_affine(m, rhs);
  SdpResult res;
  if (sol.residual > 1e-10) {
    // Linear obstruction (e.g. d = 0 with a != 0): no Gram pair at all.
    res.status = SdpStatus::Infeasible;
    res.margin = -std::numeric_limits<double>::infinity();
    return res;
  }
  const PencilProblem pencil = gram_pencil(sol, {k, k});
  res = solve_max_margin(pencil, options);
  if (out && res.status == SdpStatus::Feasible) {
    const SymMatrix g = pencil.evaluate(res.z);
    out->d = d;
    out->params = curve;
    out->s_gram = sub_block(g, 0, k);
    out->t_gram = sub_block(g, k, k);
    out->s = chebyshev_to_monomial(cheb_gram_poly(out->s_gram));
    out->t = chebyshev_to_monomial(cheb_gram_poly(out->t_gram));
    Poly ident = out->t * curve.h() - out->s * Poly{-1.0, 0.0, 1.0} - Poly::constant(1.0);
    out->residual = ident.norm_inf();
    out->margin = res.margin;
  }
  return res;
}

StabilityResult stability_constant(double a, double b, int d_max, const SdpOptions& options) {
  require_parameter_set(a, b);
  const CurveParams curve{a, b};
  bool escalated = false;
  for (int d = 0; d <= d_max; d += 2) {
    StabilityResult out;
    const SdpResult r = umschreib_sdp(curve, d, &out, options);
    if (r.status == SdpStatus::Feasible) {
      out.N = d / 2 + 2;
      out.upper_bound_only = escalated;
      return out;
    }
    if (r.status != SdpStatus::Infeasible) escalated = true;
  }
  throw Error(ErrorCode::BudgetExceeded, "no witness found up to d_max = " + std::to_string(d_max));
}

bool stability_at_most(double a, double b, int n, const SdpOptions& options) {
  require_parameter_set(a, b);
  if (n < 2) return false;
  return umschreib_sdp(CurveParams{a, b}, 2 * (n - 2), nullptr, options).status == SdpStatus::Feasible;
}

bool region_le3_predicate(double a, double b) noexcept {
  const double a2 = a * a;
  return a2 * a2 / 16.0 + a2 <= (b + 1.0) * (b + 1.0);
}

bool region_le3(double a, double b) {
  require_parameter_set(a, b);
  return region_le3_predicate(a, b);
}

double markov_lower_bound(double a, double b) {
  require_parameter_set(a, b);
  const double abs_a = std::abs(a);
  if (abs_a <= 2.0) throw Error(ErrorCode::NotApplicable, "Markov bound needs |a| > 2");
  return 2.0 + std::sqrt((abs_a - 2.0) / (2.0 * (1.0 + b - abs_a)));
}

CurveParams gamma_curve(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  const CurveParams c{2.0 + 2.0 / gamma, 1.0 + 2.0 / gamma + 4.0 / (gamma * gamma)};
  require_parameter_set(c.a, c.b);
  return c;
}

double gamma_max(int n, double tol, int d_max, const SdpOptions& options) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "gamma_max needs N >= 3");
  const int d = 2 * (n - 2);
  if (d > d_max) throw Error(ErrorCode::BudgetExceeded, "degree 2(N-2) exceeds d_max");
  auto ok = [&](double g) {
    const CurveParams c = gamma_curve(g);
    return umschreib_sdp(c, d, nullptr, options).status == SdpStatus::Feasible;
  };
  double lo = 0.1;
  double hi = 4.0 * (n - 2) * (n - 2);

  constexpr int kScan = 16;
  bool seen_false = false;
  bool flipped = false;
  double first_false = hi;
  for (int i = 0; i <= kScan; ++i) {
    const double g = lo + (hi - lo) * i / kScan;
    const bool v = ok(g);
    if (!v && !seen_false) {
      seen_false = true;
      first_false = g;
    }
    if (v && seen_false) flipped = true;
  }
  if (flipped) {
    std::clog << "warning: gamma_max(" << n << "): feasibility in gamma is not monotone on the bracket\n";
  }
  if (!seen_false) {
    std::clog << "warning: gamma_max(" << n << "): feasible on the whole bracket\n";
    return hi;
  }
  if (first_false == lo) throw Error(ErrorCode::BudgetExceeded, "no feasible gamma in the bracket");
  // Bisect between the last feasible scan point and the first infeasible one.
  hi = first_false;
  lo = std::max(lo, first_false - (4.0 * (n - 2) * (n - 2) - 0.1) / kScan);
  while (hi - lo > tol * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

SosCertificate base_certificate(const StabilityResult& st) {
  // 1 - x^2 = t y^2 + s (x^2 - 1)^2 since y^2 = (1 - x^2) h on the curve.
  SosCertificate out;
  out.target = CurveElem(CurveParams::extreme_root_product(), Poly{});
  auto squares = [](const SymMatrix& gram, const CurveElem& factor, const Poly& q, std::vector<CurveElem>& dst) {
    const auto eig = jacobi_eigen(gram);
    const std::size_t k = gram.dim();
    const double top = k ? std::max(0.0, eig.values.front()) : 0.0;
    for (std::size_t v = 0; v < k; ++v) {
      const double lam = eig.values[v];
      if (lam <= 1e-15 * top) continue;
      std::vector<double> cheb(k);
      for (std::size_t i = 0; i < k; ++i) cheb[i] = std::sqrt(lam) * eig.vectors(i, v);
      const Poly g = chebyshev_to_monomial(cheb);
      dst.push_back(elem_mul(CurveElem(g, Poly{}), factor, q));
    }
  };
  const Poly q = st.params.q();
  squares(st.t_gram, CurveElem::y(), q, out.summands);
  squares(st.s_gram, CurveElem(Poly{-1.0, 0.0, 1.0}, Poly{}), q, out.summands);
  out.residual = (sum_of_squares(out.summands, q) - out.target).norm_inf();
  return out;
}

}  // namespace genus1
