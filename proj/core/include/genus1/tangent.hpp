#pragma once

#include <string>
#include <string_view>

#include "genus1/curve.hpp"
#include "genus1/soscurve.hpp"

namespace genus1 {

enum class TangentCase { Generic, DoubleTangent, VerticalTangent };
std::string_view to_string(TangentCase c) noexcept;

struct TangentData {
  RealPoint point;
  CurveElem line;  ///< affine-linear in x, y, >= 0 on C(R), zero at point
  double gamma = 0.0;  ///< max of (x - xi)^2 / f on C(R); +inf for double tangents
  RealPoint argmax;    ///< where gamma is attained (the second touching point)
  CurveElem conic;     ///< F, vanishing at (-1, 0), (1, 0) and point
  TangentCase tag = TangentCase::Generic;
};

/// +-(q'(xi)(x - xi) + 2 eta (y - eta)), scaled to a unit gradient and signed
/// to be >= 0 on sampled points. PointNotOnCurve; SignAmbiguous for a
/// vanishing gradient; TangentNotSupporting if the line cuts C(R).
CurveElem tangent_line(const CurveParams& curve, const RealPoint& p);

struct PhiMax {
  double gamma = 0.0;
  RealPoint argmax;
};

/// max of phi = (x - xi)^2 / f over both branches: dense grid then
/// golden-section refinement; phi at the tangency point by its limit.
/// DoubleTangentDetected when phi is unbounded.
PhiMax phi_max(const CurveParams& curve, const CurveElem& f, const RealPoint& p);

/// Whether the line through p also touches C at a second point (or with
/// contact order four at p).
bool is_double_tangent(const CurveParams& curve, const RealPoint& p);

/// F = (xi^2 y - eta x^2) - (y - eta) for alpha = -1, beta = 1. EtaZero.
CurveElem conic_F(const CurveParams& curve, const RealPoint& p);

/// Classifies p and evaluates line, gamma, F.
TangentData tangent_data(const CurveParams& curve, const RealPoint& p);

struct TangentCertificate {
  CurveParams curve;
  TangentData data;
  double gamma_coeff = 0.0;  ///< 1/gamma (0 for double tangents)
  double constant = 0.0;     ///< the positive constant in front of the F-part
  SosCertificate sos;        ///< summands with f = sum of their squares
};

/// Explicit SOS certificate of the tangent line at p from a certificate of
/// 1 - x^2 = sum g_v^2. BaseCertificateInvalid, NotDivisible.
TangentCertificate decompose_tangent(const CurveParams& curve, const RealPoint& p, const SosCertificate& base);

/// Structured text: curve, point, case, gamma, constant, line, summands, residual.
std::string serialize(const TangentCertificate& cert);

}  // namespace genus1
