#include "charmut/error.hpp"

namespace charmut {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::MalformedToken: return "MalformedToken";
    case ErrorKind::ZeroExponent: return "ZeroExponent";
    case ErrorKind::InexactDivision: return "InexactDivision";
    case ErrorKind::DenominatorVanishesIdentically: return "DenominatorVanishesIdentically";
    case ErrorKind::VariableAbsent: return "VariableAbsent";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AlphabetTooLarge: return "AlphabetTooLarge";
    case ErrorKind::AllImagesCentral: return "AllImagesCentral";
    case ErrorKind::NonUniqueConjugator: return "NonUniqueConjugator";
    case ErrorKind::NoConjugator: return "NoConjugator";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NotASurfaceGroupRep: return "NotASurfaceGroupRep";
    case ErrorKind::IllDefinedSign: return "IllDefinedSign";
    case ErrorKind::NotTentativelyMutable: return "NotTentativelyMutable";
    case ErrorKind::InconsistentSplitting: return "InconsistentSplitting";
    case ErrorKind::RelatorResidualTooLarge: return "RelatorResidualTooLarge";
    case ErrorKind::ConjugatorAmbiguous: return "ConjugatorAmbiguous";
    case ErrorKind::TauIncomplete: return "TauIncomplete";
    case ErrorKind::GeneratorNotInPresentation: return "GeneratorNotInPresentation";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::PushforwardNonzero: return "PushforwardNonzero";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace charmut
