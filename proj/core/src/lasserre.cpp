#include "genus1/lasserre.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "genus1/error.hpp"
#include "genus1/format.hpp"
#include "genus1/sdpa.hpp"

namespace genus1 {

namespace {

Monomial parse_monomial(std::string_view tok) {
  std::string t;
  for (char c : tok) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty generator");
  if (t == "1") return {0, false};
  Monomial m;
  std::string_view rest = t;
  if (rest.ends_with("*y")) {
    m.has_y = true;
    rest.remove_suffix(2);
  } else if (rest == "y") {
    m.has_y = true;
    return m;
  }
  if (rest == "x") {
    m.x_power = 1;
  } else if (rest.starts_with("x^")) {
    rest.remove_prefix(2);
    if (rest.empty() || rest.size() > 3 ||
        !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorCode::ParseError, "bad exponent in generator '" + t + "'");
    }
    m.x_power = std::stoi(std::string(rest));
    if (m.x_power < 2) throw Error(ErrorCode::ParseError, "write x^0, x^1 as 1, x: '" + t + "'");
  } else {
    throw Error(ErrorCode::ParseError, "bad generator '" + t + "'");
  }
  return m;
}

// Index of lambda(m) in the full moment list u_0..u_2k, v_0..v_(2k-2).
std::size_t moment_slot(const Monomial& m, int k) {
  return m.has_y ? static_cast<std::size_t>(2 * k + 1 + m.x_power) : static_cast<std::size_t>(m.x_power);
}

std::string term_name(const MomentPencil& p, std::size_t var) { return p.label(var); }

double generator_value(const Monomial& m, const RealPoint& pt) {
  return std::pow(pt.x, m.x_power) * (m.has_y ? pt.y : 1.0);
}

}  // namespace

SubspaceSpec SubspaceSpec::parse(std::string_view text) {
  SubspaceSpec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    out.generators.push_back(parse_monomial(text.substr(start, end - start)));
    start = end + 1;
  }
  if (out.generators.front() != Monomial{0, false}) {
    throw Error(ErrorCode::ParseError, "first generator must be 1");
  }
  auto sorted = out.generators;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::ParseError, "duplicate generator");
  }
  return out;
}

std::string SubspaceSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ',';
    out += generators[i].name();
  }
  return out;
}

std::string MomentPencil::label(std::size_t var) const {
  const Monomial& m = variables.at(var);
  if (var < num_coords) return m.name();
  return (m.has_y ? "v" : "u") + std::to_string(m.x_power);
}

std::vector<std::string> MomentPencil::labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < variables.size(); ++i) out.push_back(label(i));
  return out;
}

SymMatrix MomentPencil::evaluate(std::span<const double> vars) const {
  if (vars.size() != matrices.size()) throw Error(ErrorCode::InvalidArgument, "variable count mismatch");
  SymMatrix out = constant;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] != 0.0) out.add_scaled(matrices[i], vars[i]);
  }
  return out;
}

std::string MomentPencil::entry_text(std::size_t i, std::size_t j) const {
  // Terms in moment order so that the constant comes first, then x^s, then x^s y.
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (slot, var)
  for (std::size_t v = 0; v < variables.size(); ++v) order.emplace_back(moment_slot(variables[v], k), v);
  std::sort(order.begin(), order.end());

  std::string out;
  auto append = [&](double c, const std::string& name) {
    if (c == 0.0) return;
    const bool neg = c < 0.0;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (name.empty()) {
      out += format_number(mag);
    } else {
      if (mag != 1.0) out += format_number(mag) + "*";
      out += name;
    }
  };
  append(constant(i, j), "");
  for (const auto& [slot, v] : order) append(matrices[v](i, j), term_name(*this, v));
  return out.empty() ? "0" : out;
}

std::string MomentPencil::render() const {
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (j) out += " | ";
      out += entry_text(i, j);
    }
    out += '\n';
  }
  return out;
}

PencilProblem MomentPencil::problem() const {
  PencilProblem p;
  p.constant = constant;
  p.coefficients = matrices;
  p.labels = labels();
  return p;
}

PencilProblem MomentPencil::restricted(std::span<const double> coords) const {
  if (coords.size() != num_coords) throw Error(ErrorCode::InvalidArgument, "coordinate count mismatch");
  PencilProblem p;
  p.constant = constant;
  for (std::size_t i = 0; i < num_coords; ++i) p.constant.add_scaled(matrices[i], coords[i]);
  for (std::size_t v = num_coords; v < matrices.size(); ++v) {
    p.coefficients.push_back(matrices[v]);
    p.labels.push_back(label(v));
  }
  return p;
}

MomentPencil build_pencil(const CurveParams& curve, const SubspaceSpec& subspace, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "relaxation order k must be >= 2");
  if (subspace.generators.empty() || subspace.generators.front() != Monomial{0, false}) {
    throw Error(ErrorCode::InvalidArgument, "subspace must start with the constant 1");
  }
  for (const auto& g : subspace.generators) {
    if (g.delta() > k) {
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "generator " + g.name() + " has delta " + std::to_string(g.delta()) + " > k = " + std::to_string(k));
    }
  }

  MomentPencil out;
  out.curve = curve;
  out.subspace = subspace;
  out.k = k;
  out.basis = delta_basis(k);

  // Full moment list, then the variable assignment of each slot.
  std::vector<Monomial> moments;
  for (int s = 0; s <= 2 * k; ++s) moments.push_back({s, false});
  for (int s = 0; s <= 2 * k - 2; ++s) moments.push_back({s, true});
  std::vector<long> slot_var(moments.size(), -1);  // -1: the constant lambda(1) = 1
  for (std::size_t g = 1; g < subspace.generators.size(); ++g) {
    slot_var[moment_slot(subspace.generators[g], k)] = static_cast<long>(out.variables.size());
    out.variables.push_back(subspace.generators[g]);
  }
  out.num_coords = out.variables.size();
  for (std::size_t s = 1; s < moments.size(); ++s) {
    if (slot_var[s] >= 0) continue;
    slot_var[s] = static_cast<long>(out.variables.size());
    out.variables.push_back(moments[s]);
  }

  const std::size_t n = out.basis.size();
  out.constant = SymMatrix(n);
  out.matrices.assign(out.variables.size(), SymMatrix(n));
  const Poly q = curve.q();
  for (std::size_t i = 0; i < n; ++i) {
    const CurveElem bi(out.basis.elements[i]);
    for (std::size_t j = i; j < n; ++j) {
      const CurveElem prod = elem_mul(bi, CurveElem(out.basis.elements[j]), q);
      auto put = [&](const Monomial& m, double c) {
        if (c == 0.0) return;
        const long v = slot_var[moment_slot(m, k)];
        if (v < 0) {
          out.constant.add(i, j, c);
        } else {
          out.matrices[static_cast<std::size_t>(v)].add(i, j, c);
        }
      };
      for (int s = 0; s <= prod.p.degree(); ++s) put({s, false}, prod.p.coeff(s));
      for (int s = 0; s <= prod.r.degree(); ++s) put({s, true}, prod.r.coeff(s));
    }
  }
  return out;
}

std::vector<double> moment_substitution(const MomentPencil& pencil, const RealPoint& pt, double tol) {
  if (!on_curve(pencil.curve, pt, tol)) throw Error(ErrorCode::PointNotOnCurve, "point is not on the curve");
  std::vector<double> out;
  out.reserve(pencil.variables.size());
  for (const auto& m : pencil.variables) out.push_back(generator_value(m, pt));
  return out;
}

std::vector<double> point_coordinates(const SubspaceSpec& subspace, const RealPoint& pt) {
  std::vector<double> out;
  for (std::size_t g = 1; g < subspace.generators.size(); ++g) out.push_back(generator_value(subspace.generators[g], pt));
  return out;
}

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Outside: return "outside";
    case Membership::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

std::string_view to_string(SeparationStatus s) noexcept {
  switch (s) {
    case SeparationStatus::Separated: return "separated";
    case SeparationStatus::Inside: return "inside";
    case SeparationStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

MembershipResult membership(const MomentPencil& pencil, std::span<const double> coords, const SdpOptions& options) {
  MembershipResult out;
  out.sdp = solve_max_margin(pencil.restricted(coords), options);
  out.margin = out.sdp.margin;
  out.lifted = out.sdp.z;
  switch (out.sdp.status) {
    case SdpStatus::Feasible: out.status = Membership::Inside; break;
    case SdpStatus::Infeasible: out.status = Membership::Outside; break;
    default: out.status = Membership::Indeterminate; break;
  }
  return out;
}

SupportResult support(const MomentPencil& pencil, std::span<const double> direction, const SdpOptions& options) {
  if (direction.size() != pencil.num_coords) throw Error(ErrorCode::InvalidArgument, "direction length mismatch");
  if (std::all_of(direction.begin(), direction.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorCode::InvalidArgument, "direction must be nonzero");
  }
  PencilProblem p = pencil.problem();
  p.objective.assign(p.num_vars(), 0.0);
  for (std::size_t i = 0; i < direction.size(); ++i) p.objective[i] = -direction[i];
  const SdpResult r = solve_min_objective(p, options);
  SupportResult out;
  out.status = r.status;
  if (r.z.size() == p.num_vars()) {
    out.optimizer.assign(r.z.begin(), r.z.begin() + static_cast<std::ptrdiff_t>(pencil.num_coords));
  }
  out.value = -r.objective;
  return out;
}

SeparationResult separation(const CurveParams& curve, const SubspaceSpec& subspace, int k,
                            std::span<const double> coords, const SdpOptions& options) {
  // Only the generator checks of build_pencil are needed here.
  (void)build_pencil(curve, subspace, k);
  if (coords.size() + 1 != subspace.generators.size()) {
    throw Error(ErrorCode::InvalidArgument, "coordinate count mismatch");
  }
  const Poly q = curve.q();
  const DeltaBasis basis = delta_basis(k);
  const std::size_t n = basis.size();
  const std::size_t ng = n * (n + 1) / 2;
  const std::size_t nc = subspace.generators.size();
  const std::size_t rows = 4 * static_cast<std::size_t>(k);
  constexpr double kSqrt2 = std::numbers::sqrt2;

  // Unknowns [svec(G), c]: expansion(G) - sum_g c_g g = 0 and f(coords) = -1.
  auto sv = [n](std::size_t i, std::size_t j) { return i * n - i * (i - 1) / 2 + (j - i); };
  Matrix m(rows + 1, ng + nc);
  std::vector<CurveElem> products(ng);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      products[sv(i, j)] = elem_mul(CurveElem(basis.elements[i]), CurveElem(basis.elements[j]), q);
      const auto c = delta_coordinates(products[sv(i, j)], 2 * k);
      const double w = i == j ? 1.0 : kSqrt2;
      for (std::size_t r = 0; r < rows; ++r) m(r, sv(i, j)) = w * c[r];
    }
  }
  for (std::size_t g = 0; g < nc; ++g) {
    const auto c = delta_coordinates(CurveElem(subspace.generators[g]), 2 * k);
    for (std::size_t r = 0; r < rows; ++r) m(r, ng + g) = -c[r];
    m(rows, ng + g) = g == 0 ? 1.0 : coords[g - 1];
  }
  std::vector<double> rhs(rows + 1, 0.0);
  rhs[rows] = -1.0;
  const AffineSolution sol = solve_affine(m, rhs);

  SeparationResult out;
  if (sol.residual > 1e-9) {
    out.status = SeparationStatus::Inside;
    return out;
  }
  auto gram_of = [&](std::span<const double> v) {
    SymMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g.set(i, j, i == j ? v[sv(i, j)] : v[sv(i, j)] / kSqrt2);
    return g;
  };
  PencilProblem p;
  p.constant = gram_of(sol.particular);
  std::vector<double> col(ng + nc);
  for (std::size_t c = 0; c < sol.null_basis.cols(); ++c) {
    for (std::size_t r = 0; r < ng + nc; ++r) col[r] = sol.null_basis(r, c);
    p.coefficients.push_back(gram_of(col));
  }
  const SdpResult r = solve_max_margin(p, options);
  out.margin = r.margin;
  if (r.status == SdpStatus::Infeasible) {
    out.status = SeparationStatus::Inside;
    return out;
  }
  if (r.status != SdpStatus::Feasible) {
    out.status = SeparationStatus::Indeterminate;
    return out;
  }
  std::vector<double> full = sol.particular;
  for (std::size_t c = 0; c < sol.null_basis.cols(); ++c)
    for (std::size_t row = 0; row < ng + nc; ++row) full[row] += r.z[c] * sol.null_basis(row, c);
  out.gram = gram_of(full);
  out.coefficients.assign(full.begin() + static_cast<std::ptrdiff_t>(ng), full.end());
  for (std::size_t g = 0; g < nc; ++g) out.f += CurveElem(subspace.generators[g]) * out.coefficients[g];
  CurveElem expanded;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) expanded += products[sv(i, j)] * ((i == j ? 1.0 : 2.0) * out.gram(i, j));
  out.residual = (expanded - out.f).norm_inf();
  out.status = SeparationStatus::Separated;
  return out;
}

std::vector<std::pair<double, double>> hull_directions(int n_dirs) {
  if (n_dirs < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 directions");
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n_dirs; ++i) {
    const double th = 2.0 * std::numbers::pi * i / n_dirs;
    double c = std::cos(th), s = std::sin(th);
    // Snap the axis directions so that e.g. 4 directions are exactly +-e1, +-e2.
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(s) < 1e-15) s = 0.0;
    out.emplace_back(c, s);
  }
  return out;
}

HullPoint hull_point(const MomentPencil& pencil, double dir_x, double dir_y, const SdpOptions& options) {
  if (pencil.num_coords != 2) throw Error(ErrorCode::InvalidArgument, "hull needs exactly two coordinates");
  const double dir[2] = {dir_x, dir_y};
  const SupportResult r = support(pencil, dir, options);
  HullPoint h;
  h.dir_x = dir_x;
  h.dir_y = dir_y;
  h.value = r.value;
  h.status = r.status;
  if (r.optimizer.size() == 2) {
    h.opt_x = r.optimizer[0];
    h.opt_y = r.optimizer[1];
  }
  return h;
}

std::vector<HullPoint> hull_boundary(const MomentPencil& pencil, int n_dirs, const SdpOptions& options) {
  std::vector<HullPoint> out;
  for (const auto& [dx, dy] : hull_directions(n_dirs)) out.push_back(hull_point(pencil, dx, dy, options));
  return out;
}

std::string hull_csv(const std::vector<HullPoint>& rows) {
  std::string out = "dir_x,dir_y,value,opt_x,opt_y\n";
  for (const auto& h : rows) {
    out += format_number(h.dir_x) + ',' + format_number(h.dir_y) + ',' + format_number(h.value) + ',' +
           format_number(h.opt_x) + ',' + format_number(h.opt_y) + '\n';
  }
  return out;
}

std::string export_sdpa(const MomentPencil& pencil, std::optional<std::vector<double>> fixed_coords) {
  return write_sdpa(fixed_coords ? pencil.restricted(*fixed_coords) : pencil.problem());
}

bool relaxation_exact(const MomentPencil& pencil, int stability_n) {
  int m = 0;
  for (const auto& g : pencil.subspace.generators) m = std::max(m, g.delta());
  return pencil.k >= stability_n - 1 + (m + 1) / 2;
}

}  // namespace genus1
