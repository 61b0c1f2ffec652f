#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genus1/error.hpp"
#include "genus1/format.hpp"
#include "genus1/lasserre.hpp"
#include "genus1/soscurve.hpp"
#include "genus1/tangent.hpp"
#include "parallel.hpp"
#include "svg.hpp"

namespace {

using namespace genus1;
using genus1::cli::parallel_for;
using genus1::cli::resolve_threads;

constexpr int kExitOk = 0;
constexpr int kExitOutside = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

std::string fmt(double v) { return format_number(v); }

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

struct CurveFlags {
  double a = 0.0;
  double b = 1.0;
};

void add_curve_flags(CLI::App* cmd, CurveFlags& c) {
  cmd->add_option("--a", c.a, "curve parameter a")->required();
  cmd->add_option("--b", c.b, "curve parameter b")->required();
}

SdpOptions sdp_options(double tol) {
  SdpOptions o;
  if (tol > 0.0) o.eps_feas = tol;
  return o;
}

// ---------------------------------------------------------------- stability

struct StabilityFlags {
  CurveFlags curve;
  int dmax = 60;
  double tol = 0.0;
  bool witness = false;
};

int run_stability(const StabilityFlags& f) {
  const StabilityResult r = stability_constant(f.curve.a, f.curve.b, f.dmax, sdp_options(f.tol));
  std::cout << "N=" << r.N << " d=" << r.d << " residual=" << fmt(r.residual) << '\n';
  if (r.upper_bound_only) std::cerr << "note: some lower degree was undecided; N is an upper bound\n";
  if (f.witness) {
    std::cout << "s=" << format_list(r.s.coeffs()) << '\n';
    std::cout << "t=" << format_list(r.t.coeffs()) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------- region

struct RegionFlags {
  int grid = 60;
  std::string out;
  std::string svg;
  double a_min = -1.9, a_max = 1.9, b_min = -0.9, b_max = 3.0;
  int dmax = 60;
  double tol = 0.0;
  unsigned threads = 0;
};

int run_region(const RegionFlags& f) {
  if (f.grid < 2) {
    std::cerr << "error: --grid must be at least 2\n";
    return kExitError;
  }
  if (!(f.a_min < f.a_max) || !(f.b_min < f.b_max)) {
    std::cerr << "error: empty window\n";
    return kExitError;
  }
  std::vector<cli::RegionCell> cells;
  for (int i = 0; i < f.grid; ++i) {
    for (int j = 0; j < f.grid; ++j) {
      const double a = f.a_min + (f.a_max - f.a_min) * i / (f.grid - 1);
      const double b = f.b_min + (f.b_max - f.b_min) * j / (f.grid - 1);
      if (in_parameter_set(a, b)) cells.push_back({a, b, -1});
    }
  }
  if (cells.empty()) {
    std::cerr << "error: the window does not meet the parameter set\n";
    return kExitError;
  }
  const SdpOptions opts = sdp_options(f.tol);
  parallel_for(cells.size(), resolve_threads(f.threads), [&](std::size_t i) {
    try {
      cells[i].n = stability_constant(cells[i].a, cells[i].b, f.dmax, opts).N;
    } catch (const Error&) {
      cells[i].n = -1;
    }
  });

  std::string csv = "a,b,N,predicted_le3\n";
  int failures = 0;
  for (const auto& c : cells) {
    if (c.n < 0) ++failures;
    csv += fmt(c.a) + ',' + fmt(c.b) + ',' + std::to_string(c.n) + ',' +
           (region_le3_predicate(c.a, c.b) ? "true" : "false") + '\n';
  }
  if (!write_text(f.out, csv)) return kExitError;
  if (!f.svg.empty() && !write_text(f.svg, cli::region_svg(cells, f.a_min, f.a_max, f.b_min, f.b_max, f.grid))) {
    return kExitError;
  }
  if (failures > 0) std::cerr << "warning: " << failures << " grid points failed (N=-1)\n";
  return kExitOk;
}

// -------------------------------------------------------------- gamma-table

struct GammaFlags {
  int nmax = 9;
  double tol = 1e-4;
  int dmax = 60;
  std::string out;
  unsigned threads = 0;
};

int run_gamma_table(const GammaFlags& f) {
  if (f.nmax < 3) {
    std::cerr << "error: --nmax must be at least 3\n";
    return kExitError;
  }
  const std::size_t rows = static_cast<std::size_t>(f.nmax - 2);
  std::vector<std::string> values(rows);
  parallel_for(rows, resolve_threads(f.threads), [&](std::size_t i) {
    const int n = static_cast<int>(i) + 3;
    try {
      values[i] = fmt(gamma_max(n, f.tol, f.dmax));
    } catch (const Error& e) {
      values[i] = e.code() == ErrorCode::BudgetExceeded ? "budget_exceeded" : "error";
    }
  });
  std::string csv = "N,gamma_max,markov_cap\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const int n = static_cast<int>(i) + 3;
    csv += std::to_string(n) + ',' + values[i] + ',' + std::to_string(4 * (n - 2) * (n - 2)) + '\n';
  }
  return write_text(f.out, csv) ? kExitOk : kExitError;
}

// ------------------------------------------------------------------- pencil

struct PencilFlags {
  CurveFlags curve;
  int k = 2;
  std::string subspace = "1,x,y";
  std::string format = "sdpa";
  std::string out;
};

int run_pencil(const PencilFlags& f) {
  require_parameter_set(f.curve.a, f.curve.b);
  const MomentPencil p = build_pencil(CurveParams{f.curve.a, f.curve.b}, SubspaceSpec::parse(f.subspace), f.k);
  std::string text;
  if (f.format == "sdpa") {
    text = export_sdpa(p);
  } else if (f.format == "text") {
    text = p.render();
  } else {
    std::cerr << "error: unknown --format '" << f.format << "' (sdpa or text)\n";
    return kExitError;
  }
  if (!f.out.empty() && !write_text(f.out, text)) return kExitError;
  std::cout << "size=" << p.size() << " coords=" << p.num_coords << " lifted=" << p.num_lifted() << '\n';
  if (f.out.empty()) std::cout << text;
  return kExitOk;
}

// ---------------------------------------------------- member / support / hull

struct RelaxFlags {
  CurveFlags curve;
  int k = 2;
  std::string subspace = "1,x,y";
  double tol = 0.0;
};

void add_relax_flags(CLI::App* cmd, RelaxFlags& r) {
  add_curve_flags(cmd, r.curve);
  cmd->add_option("--k", r.k, "relaxation order (>= 2)");
  cmd->add_option("--L", r.subspace, "generators of L, e.g. 1,x,y or 1,x,x*y");
  cmd->add_option("--tol", r.tol, "feasibility tolerance");
}

MomentPencil relax_pencil(const RelaxFlags& r) {
  require_parameter_set(r.curve.a, r.curve.b);
  return build_pencil(CurveParams{r.curve.a, r.curve.b}, SubspaceSpec::parse(r.subspace), r.k);
}

// Which regime the answer belongs to, on stderr so stdout stays machine-readable.
void report_regime(const MomentPencil& p) {
  try {
    const int n = stability_constant(p.curve.a, p.curve.b).N;
    std::cerr << "regime: " << (relaxation_exact(p, n) ? "exact" : "outer approximation") << " (k=" << p.k
              << ", N_C=" << n << ")\n";
  } catch (const Error&) {
    std::cerr << "regime: unknown (stability constant not computed)\n";
  }
}

struct MemberFlags {
  RelaxFlags relax;
  double x = 0.0;
  double y = 0.0;
};

int run_member(const MemberFlags& f) {
  const MomentPencil p = relax_pencil(f.relax);
  if (p.num_coords != 2) {
    std::cerr << "error: member expects a subspace with two coordinates\n";
    return kExitError;
  }
  const double coords[2] = {f.x, f.y};
  const MembershipResult r = membership(p, coords, sdp_options(f.relax.tol));
  switch (r.status) {
    case Membership::Inside:
      std::cout << "inside margin=" << fmt(r.margin) << '\n';
      return kExitOk;
    case Membership::Outside:
      std::cout << "outside margin=" << fmt(r.margin) << '\n';
      return kExitOutside;
    case Membership::Indeterminate:
      // Inside the tolerance band: on the boundary of the closed hull.
      std::cout << "indeterminate margin=" << fmt(r.margin) << '\n';
      return kExitOk;
  }
  return kExitError;
}

struct SupportFlags {
  RelaxFlags relax;
  double cx = 1.0;
  double cy = 0.0;
};

int run_support(const SupportFlags& f) {
  const MomentPencil p = relax_pencil(f.relax);
  const double dir[2] = {f.cx, f.cy};
  const SupportResult r = support(p, dir, sdp_options(f.relax.tol));
  if (r.status != SdpStatus::Optimal) {
    std::cerr << "error: solver status " << to_string(r.status) << '\n';
    return kExitError;
  }
  std::cout << "value=" << fmt(r.value) << " opt_x=" << fmt(r.optimizer.at(0)) << " opt_y=" << fmt(r.optimizer.at(1))
            << '\n';
  report_regime(p);
  return kExitOk;
}

struct HullFlags {
  RelaxFlags relax;
  int directions = 360;
  std::string out;
  std::string svg;
  unsigned threads = 0;
};

int run_hull(const HullFlags& f) {
  const MomentPencil p = relax_pencil(f.relax);
  const auto dirs = hull_directions(f.directions);
  std::vector<HullPoint> rows(dirs.size());
  const SdpOptions opts = sdp_options(f.relax.tol);
  parallel_for(dirs.size(), resolve_threads(f.threads),
               [&](std::size_t i) { rows[i] = hull_point(p, dirs[i].first, dirs[i].second, opts); });
  int bad = 0;
  for (const auto& h : rows) bad += h.status != SdpStatus::Optimal;
  if (!write_text(f.out, hull_csv(rows))) return kExitError;
  if (!f.svg.empty()) {
    std::vector<std::pair<double, double>> curve_pts, hull_pts;
    for (const auto& pt : sample_real_points(p.curve, 400)) {
      const auto c = point_coordinates(p.subspace, pt);
      curve_pts.emplace_back(c[0], c[1]);
    }
    for (const auto& h : rows) hull_pts.emplace_back(h.opt_x, h.opt_y);
    if (!write_text(f.svg, cli::hull_svg(curve_pts, hull_pts))) return kExitError;
  }
  if (bad > 0) std::cerr << "warning: " << bad << " directions did not reach optimality\n";
  report_regime(p);
  return kExitOk;
}

// ------------------------------------------------------------- tangent-cert

struct TangentFlags {
  CurveFlags curve;
  double x0 = 0.0;
  std::string branch = "upper";
  std::string out;
};

int run_tangent(const TangentFlags& f) {
  require_parameter_set(f.curve.a, f.curve.b);
  const CurveParams c{f.curve.a, f.curve.b};
  const double qv = c.q().eval(f.x0);
  if (qv > 1e-12) throw Error(ErrorCode::PointNotOnCurve, "no real point of C above x0 = " + fmt(f.x0));
  double y = std::sqrt(std::max(0.0, -qv));
  if (f.branch == "lower") {
    y = -y;
  } else if (f.branch != "upper") {
    std::cerr << "error: --branch must be upper or lower\n";
    return kExitError;
  }
  const StabilityResult st = stability_constant(c.a, c.b);
  const TangentCertificate cert = decompose_tangent(c, RealPoint{f.x0, y}, base_certificate(st));
  return write_text(f.out, serialize(cert)) ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex hulls, stability constants and SOS certificates for genus-one curves y^2 + q(x) = 0"};
  app.require_subcommand(1);

  StabilityFlags stab;
  auto* c_stab = app.add_subcommand("stability", "stability constant N(a,b) with its witness");
  add_curve_flags(c_stab, stab.curve);
  c_stab->add_option("--dmax", stab.dmax, "largest witness degree tried");
  c_stab->add_option("--tol", stab.tol, "feasibility tolerance");
  c_stab->add_flag("--witness", stab.witness, "print s and t");

  RegionFlags region;
  auto* c_region = app.add_subcommand("region", "scan N(a,b) over a parameter window");
  c_region->add_option("--grid", region.grid, "points per axis")->required();
  c_region->add_option("--out", region.out, "CSV output (default stdout)");
  c_region->add_option("--svg", region.svg, "SVG picture of the region");
  c_region->add_option("--a-min", region.a_min);
  c_region->add_option("--a-max", region.a_max);
  c_region->add_option("--b-min", region.b_min);
  c_region->add_option("--b-max", region.b_max);
  c_region->add_option("--dmax", region.dmax);
  c_region->add_option("--tol", region.tol);
  c_region->add_option("--threads", region.threads, "worker threads (0 = all cores)");

  GammaFlags gamma;
  auto* c_gamma = app.add_subcommand("gamma-table", "largest gamma with N(C_gamma) <= N");
  c_gamma->add_option("--nmax", gamma.nmax)->required();
  c_gamma->add_option("--tol", gamma.tol, "bisection tolerance (relative)");
  c_gamma->add_option("--dmax", gamma.dmax);
  c_gamma->add_option("--out", gamma.out, "CSV output (default stdout)");
  c_gamma->add_option("--threads", gamma.threads);

  PencilFlags pencil;
  auto* c_pencil = app.add_subcommand("pencil", "moment pencil of the relaxation");
  add_curve_flags(c_pencil, pencil.curve);
  c_pencil->add_option("--k", pencil.k);
  c_pencil->add_option("--L", pencil.subspace);
  c_pencil->add_option("--format", pencil.format, "sdpa or text");
  c_pencil->add_option("--out", pencil.out);

  MemberFlags member;
  auto* c_member = app.add_subcommand("member", "is (x, y) in the relaxation of conv C(R)?");
  add_relax_flags(c_member, member.relax);
  c_member->add_option("--x", member.x)->required();
  c_member->add_option("--y", member.y)->required();

  SupportFlags sup;
  auto* c_support = app.add_subcommand("support", "max of cx*x + cy*y over the relaxation");
  add_relax_flags(c_support, sup.relax);
  c_support->add_option("--cx", sup.cx)->required();
  c_support->add_option("--cy", sup.cy)->required();

  HullFlags hull;
  auto* c_hull = app.add_subcommand("hull", "support values over uniformly spaced directions");
  add_relax_flags(c_hull, hull.relax);
  c_hull->add_option("--directions", hull.directions);
  c_hull->add_option("--out", hull.out, "CSV output (default stdout)");
  c_hull->add_option("--svg", hull.svg);
  c_hull->add_option("--threads", hull.threads);

  TangentFlags tangent;
  auto* c_tangent = app.add_subcommand("tangent-cert", "explicit SOS certificate of a tangent line");
  add_curve_flags(c_tangent, tangent.curve);
  c_tangent->add_option("--x0", tangent.x0)->required();
  c_tangent->add_option("--branch", tangent.branch, "upper or lower");
  c_tangent->add_option("--out", tangent.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (c_stab->parsed()) return run_stability(stab);
    if (c_region->parsed()) return run_region(region);
    if (c_gamma->parsed()) return run_gamma_table(gamma);
    if (c_pencil->parsed()) return run_pencil(pencil);
    if (c_member->parsed()) return run_member(member);
    if (c_support->parsed()) return run_support(sup);
    if (c_hull->parsed()) return run_hull(hull);
    if (c_tangent->parsed()) return run_tangent(tangent);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (c_stab->parsed() && e.code() == ErrorCode::BudgetExceeded) return kExitBudget;
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
