#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genus1/curve.hpp"
#include "genus1/sdp.hpp"

namespace genus1 {

/// Monomial generators of the subspace L, first entry 1, e.g. [1, x, y].
struct SubspaceSpec {
  std::vector<Monomial> generators;

  /// Comma-separated list of "1", "x", "x^i", "y", "x*y", "x^j*y".
  /// Throws ParseError (malformed, duplicate, or not starting with 1).
  static SubspaceSpec parse(std::string_view text);
  static SubspaceSpec linear() { return parse("1,x,y"); }
  std::string to_string() const;
};

/// Moment matrix of a unital functional lambda on {delta <= 2k}:
/// entry (i, j) = lambda(b_i b_j) over b = delta_basis(k). lambda(1) = 1;
/// lambda of each non-constant generator of L is a coordinate variable, the
/// other moments are lifted variables. Variable order: coordinates in L
/// order, then lifted moments x^0..x^2k followed by x^0 y..x^(2k-2) y.
struct MomentPencil {
  CurveParams curve;
  SubspaceSpec subspace;
  int k = 2;
  DeltaBasis basis;
  std::vector<Monomial> variables;  ///< the moment lambda(m) behind each variable
  std::size_t num_coords = 0;
  SymMatrix constant;
  std::vector<SymMatrix> matrices;  ///< one per variable

  std::size_t size() const noexcept { return constant.dim(); }
  std::size_t num_lifted() const noexcept { return variables.size() - num_coords; }
  /// "x", "y", "x*y" for coordinates; "u<s>" = lambda(x^s), "v<s>" = lambda(x^s y).
  std::string label(std::size_t var) const;
  std::vector<std::string> labels() const;

  SymMatrix evaluate(std::span<const double> vars) const;
  /// Symbolic entry, e.g. "x - u5" or "2 - u2 - u4".
  std::string entry_text(std::size_t i, std::size_t j) const;
  /// One row per line, entries separated by " | ".
  std::string render() const;

  PencilProblem problem() const;
  /// Coordinates fixed, lifted moments free.
  PencilProblem restricted(std::span<const double> coords) const;
};

/// Throws GeneratorOutOfRange if some generator has delta > k, InvalidArgument for k < 2.
MomentPencil build_pencil(const CurveParams& curve, const SubspaceSpec& subspace, int k);

/// Every variable set to its moment at pt; the result is rank one. PointNotOnCurve.
std::vector<double> moment_substitution(const MomentPencil& pencil, const RealPoint& pt, double tol = 1e-9);

/// Coordinates of a point: the non-constant generators evaluated at pt.
std::vector<double> point_coordinates(const SubspaceSpec& subspace, const RealPoint& pt);

enum class Membership { Inside, Outside, Indeterminate };
std::string_view to_string(Membership m) noexcept;

struct MembershipResult {
  Membership status = Membership::Indeterminate;
  double margin = 0.0;
  std::vector<double> lifted;
  SdpResult sdp;
};

MembershipResult membership(const MomentPencil& pencil, std::span<const double> coords,
                            const SdpOptions& options = {});

struct SupportResult {
  SdpStatus status = SdpStatus::Indeterminate;
  double value = 0.0;                ///< max <direction, coords> over the relaxation
  std::vector<double> optimizer;     ///< coordinate projection of the maximizer
};

SupportResult support(const MomentPencil& pencil, std::span<const double> direction,
                      const SdpOptions& options = {});

enum class SeparationStatus { Separated, Inside, Indeterminate };
std::string_view to_string(SeparationStatus s) noexcept;

struct SeparationResult {
  SeparationStatus status = SeparationStatus::Indeterminate;
  /// f = sum_g c_g g over the generators of L, with f(coords) = -1 and f a
  /// sum of squares of delta <= k elements.
  std::vector<double> coefficients;
  CurveElem f;
  SymMatrix gram;
  double residual = 0.0;
  double margin = 0.0;
};

SeparationResult separation(const CurveParams& curve, const SubspaceSpec& subspace, int k,
                            std::span<const double> coords, const SdpOptions& options = {});

struct HullPoint {
  double dir_x = 0.0;
  double dir_y = 0.0;
  double value = 0.0;
  double opt_x = 0.0;
  double opt_y = 0.0;
  SdpStatus status = SdpStatus::Indeterminate;
};

/// n uniformly spaced directions (cos(2 pi i/n), sin(2 pi i/n)).
std::vector<std::pair<double, double>> hull_directions(int n_dirs);
HullPoint hull_point(const MomentPencil& pencil, double dir_x, double dir_y, const SdpOptions& options = {});
std::vector<HullPoint> hull_boundary(const MomentPencil& pencil, int n_dirs, const SdpOptions& options = {});
/// Header "dir_x,dir_y,value,opt_x,opt_y" plus one row per point.
std::string hull_csv(const std::vector<HullPoint>& rows);

/// SDPA sparse text of the free pencil, or with the coordinates fixed.
std::string export_sdpa(const MomentPencil& pencil, std::optional<std::vector<double>> fixed_coords = std::nullopt);

/// Whether K_W is known to equal the closed convex hull: every psd f in L
/// with delta(f) <= m is SOS at order N_C - 1 + ceil(m/2), so k must reach that.
bool relaxation_exact(const MomentPencil& pencil, int stability_n);

}  // namespace genus1
