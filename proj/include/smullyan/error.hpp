#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace smullyan {

enum class Errc {
  SyntaxError,
  UnknownSymbol,
  InfiniteAlphabet,
  DaggerViolation,
  ClosureSymbolMissing,
  BadBasePredicate,
  NotAPredicate,
  NotASentence,
  NoRClosure,
  NoNRClosure,
  CertFailure,
  PropertyNotApplicable,
  BudgetZero,
  NotUnary,
  NotNFree,
  UnknownEntry,
  OpenTerm,
  NotClosed,
  UnboundedQuantifier,
  OpenDArgument,
  EvaluationBudgetExceeded,
  NotEvaluable,
  UnsoundTheory,
  OracleContractViolation,
  BadInput,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above; callers
// that need to branch on the failure kind inspect code() rather than what().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace smullyan
