#pragma once

#include <stdexcept>
#include <string>

namespace pbw {

enum class ErrorKind {
  DivisionByZero,
  NonTerminating,
  UnknownGenerator,
  InvalidPresentation,
  TwistAxiomFailure,
  UnknownKey,
  MissingParameter,
  ConfluenceFailure,
  RelationViolation,
  NonInvertibleImage,
  DependenceFound,
  PoleInF,
  SolveFailure,
  CutoffTooSmall,
  DegenerateWeight,
  SyntaxError,
  UndeclaredSymbol,
  NonAscendingRuleRHS,
  MisorientedRule,
  Usage,
};

const char* to_string(ErrorKind kind);

// Every failure in the library is reported through this type; `kind` is what
// callers and tests dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace pbw
