#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charmut {

enum class ErrorKind {
  UnknownGenerator,
  MalformedToken,
  ZeroExponent,
  InexactDivision,
  DenominatorVanishesIdentically,
  VariableAbsent,
  ParseError,
  AlphabetTooLarge,
  AllImagesCentral,
  NonUniqueConjugator,
  NoConjugator,
  NotFound,
  NotASurfaceGroupRep,
  IllDefinedSign,
  NotTentativelyMutable,
  InconsistentSplitting,
  RelatorResidualTooLarge,
  ConjugatorAmbiguous,
  TauIncomplete,
  GeneratorNotInPresentation,
  DegreeTooLarge,
  UnsupportedDegree,
  PushforwardNonzero,
  FileNotFound,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI, the Python module) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace charmut
