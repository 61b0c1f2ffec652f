#pragma once

#include <optional>
#include <vector>

#include "genus1/curve.hpp"
#include "genus1/linalg.hpp"
#include "genus1/sdp.hpp"

namespace genus1 {

/// f = sum_ij G_ij basis_i basis_j in R[C].
struct GramCertificate {
  DeltaBasis basis;
  SymMatrix gram;
  CurveElem target;
  double residual = 0.0;        ///< max coefficient error of the expansion
  double min_eigenvalue = 0.0;  ///< of gram, after clipping (so >= 0)
  double margin = 0.0;          ///< SDP margin before clipping
};

/// f = sum_v g_v^2 in R[C].
struct SosCertificate {
  std::vector<CurveElem> summands;
  CurveElem target;
  double residual = 0.0;
};

enum class SosStatus { Feasible, Infeasible, Indeterminate };

struct SosOutcome {
  SosStatus status = SosStatus::Indeterminate;
  std::optional<GramCertificate> certificate;
  SdpResult sdp;
};

struct SosOptions {
  SdpOptions sdp;
  /// Relative expansion tolerance used to accept a clipped boundary Gram.
  double verify_tol = 1e-7;
};

/// Is f a sum of squares of elements with delta <= d? Strictly feasible
/// slices are accepted directly. Elements vanishing somewhere on C(R) only
/// admit singular Grams (margin 0); those are accepted when clipping the
/// near-optimal Gram to the PSD cone still reproduces f within verify_tol.
SosOutcome sos_feasible(const CurveElem& f, int d, const CurveParams& curve, const SosOptions& options = {});

/// Smallest d <= d_max with f SOS of delta-degree d; nullopt when every
/// level is infeasible. BudgetExceeded if undecided levels remain.
std::optional<int> theta(const CurveElem& f, const CurveParams& curve, int d_max, const SosOptions& options = {});

/// Eigen-factorization of a Gram certificate into explicit squares.
SosCertificate extract_sos(const GramCertificate& g, const Poly& q);

struct StabilityResult {
  CurveParams params;
  int N = 0;
  int d = 0;
  Poly s;  ///< t h - s f = 1 with f = x^2 - 1
  Poly t;
  /// Gram matrices of s and t over Chebyshev polynomials T_0..T_{d/2}.
  SymMatrix s_gram;
  SymMatrix t_gram;
  double residual = 0.0;  ///< max |coeff(t h - s f - 1)| in the monomial basis
  double margin = 0.0;
  /// Some lower level was undecided, so N is only an upper bound.
  bool upper_bound_only = false;
};

/// Raw feasibility of t h - s f = 1 with SOS s, t of degree <= d (d even).
/// Returns the SDP outcome; on success fills `out` (except N/flags).
SdpResult umschreib_sdp(const CurveParams& curve, int d, StabilityResult* out = nullptr,
                        const SdpOptions& options = {});

/// N(a, b) = d/2 + 2 for the least feasible even d. NotInP, BudgetExceeded.
StabilityResult stability_constant(double a, double b, int d_max = 60, const SdpOptions& options = {});

/// Whether N(a, b) <= n, decided by the single SDP at d = 2(n - 2).
bool stability_at_most(double a, double b, int n, const SdpOptions& options = {});

/// a^4/16 + a^2 <= (b + 1)^2, no membership check.
bool region_le3_predicate(double a, double b) noexcept;
/// Same, after requiring (a, b) in P.
bool region_le3(double a, double b);

/// 2 + sqrt((|a| - 2) / (2 (1 + b - |a|))). NotInP, NotApplicable for |a| <= 2.
double markov_lower_bound(double a, double b);

/// (a, b) = (2 + 2/g, 1 + 2/g + 4/g^2). InvalidArgument for g <= 0, NotInP.
CurveParams gamma_curve(double gamma);

/// Largest gamma with N(C_gamma) <= n, by bisection over [0.1, 4(n-2)^2].
/// Logs a warning to std::clog if a pre-scan sees the predicate flip back.
double gamma_max(int n, double tol = 1e-4, int d_max = 60, const SdpOptions& options = {});

/// (1 - x^2) = t y^2 + s (x^2 - 1)^2 from the stability witnesses, written
/// as explicit squares with delta <= N.
SosCertificate base_certificate(const StabilityResult& st);

/// Chebyshev coefficient vector -> monomial polynomial.
Poly chebyshev_to_monomial(const std::vector<double>& cheb);

}  // namespace genus1
