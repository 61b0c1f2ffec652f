#include "genus1/error.hpp"

namespace genus1 {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::NotIndefinite: return "NotIndefinite";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::NotQuarticMonic: return "NotQuarticMonic";
    case ErrorCode::NotInP: return "NotInP";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::EmptyRealLocus: return "EmptyRealLocus";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SignAmbiguous: return "SignAmbiguous";
    case ErrorCode::TangentNotSupporting: return "TangentNotSupporting";
    case ErrorCode::DoubleTangentDetected: return "DoubleTangentDetected";
    case ErrorCode::EtaZero: return "EtaZero";
    case ErrorCode::BaseCertificateInvalid: return "BaseCertificateInvalid";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace genus1
