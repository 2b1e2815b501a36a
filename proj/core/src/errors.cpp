#include "fovkit/errors.hpp"

namespace fov {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NotOnCircle: return "NotOnCircle";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::BisectionFailure: return "BisectionFailure";
    case ErrorCode::RequiresVanishingAtZero: return "RequiresVanishingAtZero";
    case ErrorCode::PolesNearSpectrum: return "PolesNearSpectrum";
    case ErrorCode::AlphaOnCircle: return "AlphaOnCircle";
    case ErrorCode::NegativeT: return "NegativeT";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
  }
  return "Unknown";
}

}  // namespace fov
