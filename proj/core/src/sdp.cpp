#include "genus1/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genus1/error.hpp"

namespace genus1 {

SymMatrix PencilProblem::evaluate(std::span<const double> z) const {
  if (z.size() != coefficients.size()) throw Error(ErrorCode::InvalidArgument, "pencil variable count mismatch");
  SymMatrix out = constant;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != 0.0) out.add_scaled(coefficients[i], z[i]);
  }
  return out;
}

void PencilProblem::validate() const {
  for (const auto& a : coefficients) {
    if (a.dim() != constant.dim()) throw Error(ErrorCode::InvalidArgument, "pencil matrices differ in dimension");
  }
  if (!objective.empty() && objective.size() != coefficients.size()) {
    throw Error(ErrorCode::InvalidArgument, "objective length differs from variable count");
  }
  if (!labels.empty() && labels.size() != coefficients.size()) {
    throw Error(ErrorCode::InvalidArgument, "label count differs from variable count");
  }
}

std::string_view to_string(SdpStatus s) noexcept {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Feasible: return "Feasible";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::Indeterminate: return "Indeterminate";
    case SdpStatus::IterationLimit: return "IterationLimit";
    case SdpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

// max b.w  s.t.  S = C - sum_i w_i F_i >= 0, with dual
// min <C, X>  s.t.  <F_i, X> = b_i, X >= 0.
struct ConicProblem {
  Matrix c;
  std::vector<Matrix> f;
  std::vector<double> b;
};

struct IpmOutcome {
  std::vector<double> w;
  Matrix x;
  double pobj = 0.0;
  double dobj = 0.0;
  double primal_infeas = 0.0;
  bool converged = false;
  bool unbounded = false;
  int iterations = 0;
};

double max_step(const Matrix& x, const Matrix& dx) {
  const auto l = cholesky(x);
  if (!l) return 0.0;
  const double lam = min_eigenvalue(congruence_inverse(*l, dx));
  return lam >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lam;
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

IpmOutcome run_ipm(const ConicProblem& p, std::vector<double> w, Matrix x, const SdpOptions& opt) {
  const std::size_t n = p.c.rows();
  const std::size_t m = p.f.size();
  const double nn = static_cast<double>(n);
  const double b_norm = inf_norm(p.b);
  const double c_norm = p.c.frobenius_norm();

  Matrix s = p.c;
  for (std::size_t i = 0; i < m; ++i) s.add_scaled(p.f[i], -w[i]);

  IpmOutcome out;
  int stalls = 0;
  for (int iter = 0; iter <= opt.max_iter; ++iter) {
    out.iterations = iter;
    Matrix rd = p.c - s;
    for (std::size_t i = 0; i < m; ++i) rd.add_scaled(p.f[i], -w[i]);
    std::vector<double> rp(m);
    for (std::size_t i = 0; i < m; ++i) rp[i] = p.b[i] - frobenius_dot(p.f[i], x);

    double dobj = 0.0;
    for (std::size_t i = 0; i < m; ++i) dobj += p.b[i] * w[i];
    const double pobj = frobenius_dot(p.c, x);
    out.w = w;
    out.x = x;
    out.pobj = pobj;
    out.dobj = dobj;
    out.primal_infeas = inf_norm(rp) / (1.0 + b_norm);
    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double dual_infeas = rd.frobenius_norm() / (1.0 + c_norm);
    if (rel_gap <= opt.eps_gap && out.primal_infeas <= 1e-8 && dual_infeas <= 1e-8) {
      out.converged = true;
      return out;
    }
    if (dobj > opt.unbounded_limit) {
      out.unbounded = true;
      return out;
    }
    if (iter == opt.max_iter) break;

    const auto ls = cholesky(s);
    if (!ls) break;
    const Matrix sinv = cholesky_inverse(*ls);
    const double mu = frobenius_dot(x, s) / nn;

    // Schur complement M_ij = <F_i, X F_j S^-1>.
    std::vector<Matrix> xfs(m);
    for (std::size_t j = 0; j < m; ++j) xfs[j] = x * p.f[j] * sinv;
    Matrix schur(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        schur(i, j) = schur(j, i) = 0.5 * (frobenius_dot(p.f[i], xfs[j]) + frobenius_dot(p.f[j], xfs[i]));
      }
    }
    auto lm = cholesky(schur);
    if (!lm) {
      double diag_max = 1.0;
      for (std::size_t i = 0; i < m; ++i) diag_max = std::max(diag_max, std::abs(schur(i, i)));
      for (std::size_t i = 0; i < m; ++i) schur(i, i) += 1e-12 * diag_max;
      lm = cholesky(schur);
      if (!lm) break;
    }

    const Matrix x_rd_sinv = x * rd * sinv;
    std::vector<double> base_rhs(m);
    std::vector<double> f_sinv(m);
    for (std::size_t i = 0; i < m; ++i) {
      base_rhs[i] = p.b[i] + frobenius_dot(p.f[i], x_rd_sinv);
      f_sinv[i] = frobenius_dot(p.f[i], sinv);
    }

    auto direction = [&](double sigma_mu, const Matrix* corr, std::vector<double>& dw, Matrix& dx, Matrix& ds) {
      std::vector<double> rhs(m);
      for (std::size_t i = 0; i < m; ++i) {
        rhs[i] = base_rhs[i] - sigma_mu * f_sinv[i];
        if (corr) rhs[i] += frobenius_dot(p.f[i], *corr);
      }
      dw = cholesky_solve(*lm, rhs);
      ds = rd;
      for (std::size_t j = 0; j < m; ++j) ds.add_scaled(p.f[j], -dw[j]);
      dx = sinv * sigma_mu;
      dx -= x;
      dx -= x * ds * sinv;
      if (corr) dx -= *corr;
      dx = dx.symmetrized();
    };

    std::vector<double> dw;
    Matrix dx, ds;
    direction(0.0, nullptr, dw, dx, ds);
    const double ap_aff = std::min(1.0, max_step(x, dx));
    const double ad_aff = std::min(1.0, max_step(s, ds));
    Matrix x_aff = x;
    x_aff.add_scaled(dx, ap_aff);
    Matrix s_aff = s;
    s_aff.add_scaled(ds, ad_aff);
    const double mu_aff = frobenius_dot(x_aff, s_aff) / nn;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
    const Matrix corr = dx * ds * sinv;

    direction(sigma * mu, &corr, dw, dx, ds);
    const double tau = rel_gap < 1e-3 ? 0.98 : 0.9;
    const double ap = std::min(1.0, tau * max_step(x, dx));
    const double ad = std::min(1.0, tau * max_step(s, ds));
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) break;
    } else {
      stalls = 0;
    }
    x.add_scaled(dx, ap);
    s.add_scaled(ds, ad);
    for (std::size_t i = 0; i < m; ++i) w[i] += ad * dw[i];
  }
  return out;
}

Matrix embed_with_cap(const SymMatrix& a, double corner) {
  const std::size_t n = a.dim();
  Matrix out(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
  out(n, n) = corner;
  return out;
}

SymMatrix top_block(const Matrix& x, std::size_t n) {
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.set(i, j, 0.5 * (x(i, j) + x(j, i)));
  return out;
}

}  // namespace

SdpResult solve_max_margin(const PencilProblem& problem, const SdpOptions& opt) {
  problem.validate();
  const std::size_t n = problem.dim();
  const std::size_t m = problem.num_vars();

  // Variables (z_1..z_m, t); an extra 1x1 block t <= margin_cap keeps the
  // problem bounded.
  ConicProblem cp;
  cp.c = embed_with_cap(problem.constant, opt.margin_cap);
  for (const auto& a : problem.coefficients) cp.f.push_back(embed_with_cap(a, 0.0) * -1.0);
  Matrix ident = Matrix::identity(n + 1);
  cp.f.push_back(ident);
  cp.b.assign(m + 1, 0.0);
  cp.b[m] = 1.0;

  const double lam0 = n > 0 ? min_eigenvalue(problem.constant.dense()) : 0.0;
  std::vector<double> w(m + 1, 0.0);
  w[m] = std::min(lam0 - 1.0, opt.margin_cap - 1.0);
  const Matrix x0 = Matrix::identity(n + 1) * (1.0 / static_cast<double>(n + 1));

  const IpmOutcome ipm = run_ipm(cp, std::move(w), x0, opt);

  SdpResult res;
  res.iterations = ipm.iterations;
  res.z.assign(ipm.w.begin(), ipm.w.begin() + static_cast<std::ptrdiff_t>(m));
  const SymMatrix az = problem.evaluate(res.z);
  res.margin = n > 0 ? std::min(min_eigenvalue(az.dense()), opt.margin_cap) : opt.margin_cap;
  res.margin_upper = ipm.pobj;
  res.objective = res.margin;

  SymMatrix y = top_block(ipm.x, n);
  const double tr = y.dense().trace();
  if (tr > 0.0) y *= 1.0 / tr;
  res.dual = y;

  bool certificate = false;
  if (tr > 0.0 && ipm.primal_infeas <= 1e-6) {
    const Matrix yd = y.dense();
    const double a0y = frobenius_dot(problem.constant.dense(), yd);
    certificate = a0y < -opt.eps_feas;
    for (std::size_t i = 0; i < m && certificate; ++i) {
      const Matrix ai = problem.coefficients[i].dense();
      if (std::abs(frobenius_dot(ai, yd)) > 1e-6 * (1.0 + ai.frobenius_norm())) certificate = false;
    }
  }

  if (res.margin > opt.eps_feas) {
    res.status = SdpStatus::Feasible;
  } else if (certificate) {
    res.status = SdpStatus::Infeasible;
    res.has_certificate = true;
  } else if (ipm.converged) {
    res.status = SdpStatus::Indeterminate;
  } else {
    res.status = SdpStatus::IterationLimit;
  }
  return res;
}

SdpResult solve_min_objective(const PencilProblem& problem, const SdpOptions& opt) {
  problem.validate();
  const std::size_t m = problem.num_vars();
  if (problem.objective.size() != m || inf_norm(problem.objective) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "solve_min_objective needs a nonzero objective");
  }
  SdpResult phase1 = solve_max_margin(problem, opt);
  if (phase1.status != SdpStatus::Feasible) return phase1;

  ConicProblem cp;
  cp.c = problem.constant.dense();
  for (const auto& a : problem.coefficients) cp.f.push_back(a.dense() * -1.0);
  cp.b.resize(m);
  for (std::size_t i = 0; i < m; ++i) cp.b[i] = -problem.objective[i];
  const std::size_t n = problem.dim();
  const Matrix x0 = Matrix::identity(n);

  const IpmOutcome ipm = run_ipm(cp, phase1.z, x0, opt);

  SdpResult res;
  res.iterations = phase1.iterations + ipm.iterations;
  res.z = ipm.w;
  res.margin = min_eigenvalue(problem.evaluate(res.z).dense());
  res.objective = -ipm.dobj;
  res.margin_upper = ipm.pobj;
  res.dual = top_block(ipm.x, n);
  if (ipm.unbounded) {
    res.status = SdpStatus::Unbounded;
  } else if (ipm.converged) {
    res.status = SdpStatus::Optimal;
  } else {
    res.status = SdpStatus::IterationLimit;
  }
  return res;
}

}  // namespace genus1
