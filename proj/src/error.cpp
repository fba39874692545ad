#include "forge/error.hpp"

namespace forge {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorKind::MismatchedRing: return "MismatchedRing";
    case ErrorKind::IncompleteTargets: return "IncompleteTargets";
    case ErrorKind::NotAField: return "NotAField";
    case ErrorKind::NotZMod: return "NotZMod";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotGeneratingModI: return "NotGeneratingModI";
    case ErrorKind::TooFewElements: return "TooFewElements";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NormTooLarge: return "NormTooLarge";
    case ErrorKind::NotSL: return "NotSL";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::OnMinorLocus: return "OnMinorLocus";
    case ErrorKind::NonConstantRank: return "NonConstantRank";
    case ErrorKind::WrongCharPoly: return "WrongCharPoly";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::BadRoot: return "BadRoot";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotCharP: return "NotCharP";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotCyclicP: return "NotCyclicP";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> ideal)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      ideal_(ideal) {}

void fail(ErrorKind kind, const std::string& message, std::optional<std::size_t> ideal) {
  throw Error(kind, message, ideal);
}

}  // namespace forge
