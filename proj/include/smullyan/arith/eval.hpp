#pragma once

#include <cstdint>

#include "smullyan/arith/ast.hpp"

namespace smullyan::arith {

inline constexpr std::uint64_t kDefaultEvalBudget = 5'000'000;

// Truth in the naturals. Quantifiers whose body is linear in the bound
// variable are decided from the finitely many points where an atom can change
// value; other quantifiers are iterated. Throws NotClosed, and
// EvaluationBudgetExceeded once `budget` evaluation steps are used.
bool eval(const Formula& f, std::uint64_t budget = kDefaultEvalBudget);
BigInt eval_term(const Term& t, std::uint64_t budget = kDefaultEvalBudget);

// Replaces every D(t) by the numeral of diag(value of t), innermost first.
// Throws OpenDArgument when some t has free variables.
Formula d_normalize(const Formula& f);
Term d_normalize(const Term& t);

}  // namespace smullyan::arith
