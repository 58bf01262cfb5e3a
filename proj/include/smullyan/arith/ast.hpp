#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smullyan/symbol.hpp"

namespace smullyan::arith {

// Variable ids: the distinguished variable v is 0; x1, x2, ... are 1, 2, ...
using VarId = std::uint64_t;
inline constexpr VarId kV = 0;

std::string var_name(VarId id);
// Throws SyntaxError for anything but "v" or "x<k>" with k >= 1.
VarId parse_var_name(std::string_view name);

class Term {
 public:
  enum class Kind { Var, Num, Add, Mul, D };

  static Term var(VarId id);
  static Term num(BigInt value);
  static Term add(Term a, Term b);
  static Term mul(Term a, Term b);
  static Term d(Term arg);

  Kind kind() const noexcept { return node_->kind; }
  VarId var_id() const;          // Var
  const BigInt& value() const;   // Num
  const Term& lhs() const;       // Add, Mul
  const Term& rhs() const;       // Add, Mul
  const Term& arg() const;       // D

  bool operator==(const Term& other) const;

 private:
  struct Node {
    Kind kind = Kind::Num;
    VarId var = 0;
    BigInt value;
    std::vector<Term> kids;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { Bot, Eq, Leq, Not, And, Or, Imp, Forall, Exists };

  static Formula bot();
  static Formula eq(Term a, Term b);
  static Formula leq(Term a, Term b);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  // Quantifiers range over 0..bound inclusive.
  static Formula forall(VarId x, Term bound, Formula body);
  static Formula exists(VarId x, Term bound, Formula body);

  Kind kind() const noexcept { return node_->kind; }
  bool is_atom() const noexcept { return kind() == Kind::Eq || kind() == Kind::Leq; }
  bool is_quantifier() const noexcept { return kind() == Kind::Forall || kind() == Kind::Exists; }

  const Term& lhs() const;           // Eq, Leq
  const Term& rhs() const;           // Eq, Leq
  const Formula& sub() const;        // Not
  const Formula& left() const;       // And, Or, Imp
  const Formula& right() const;      // And, Or, Imp
  VarId bound_var() const;           // quantifiers
  const Term& bound() const;         // quantifiers
  const Formula& body() const;       // quantifiers

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Kind kind = Kind::Bot;
    VarId var = 0;
    std::vector<Term> terms;
    std::vector<Formula> kids;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Expr = std::variant<Term, Formula>;

Formula negate_n(Formula f, std::size_t times);

std::set<VarId> free_vars(const Term& t);
std::set<VarId> free_vars(const Formula& f);
bool is_closed(const Term& t);
bool is_closed(const Formula& f);
bool contains_d(const Term& t);
bool contains_d(const Formula& f);

// Replaces the free occurrences of x by t. Throws OpenTerm unless t is closed.
Formula subst(const Formula& f, VarId x, const Term& t);
// Same without the closedness requirement. Only safe when t's free variables
// cannot be captured, e.g. t = D(Var x) substituted for x itself.
Formula replace_free(const Formula& f, VarId x, const Term& t);
Term replace_free(const Term& t, VarId x, const Term& by);

// s-expression syntax:
//   formula ::= (bot) | (eq T T) | (leq T T) | (not F) | (and F F) | (or F F)
//             | (imp F F) | (forall VAR T F) | (exists VAR T F)
//   term    ::= VAR | DECIMAL | (num DECIMAL) | (var VAR) | (add T T) | (mul T T) | (d T)
std::string to_sexpr(const Term& t);
std::string to_sexpr(const Formula& f);
std::string to_sexpr(const Expr& e);
// Throws SyntaxError; UnboundedQuantifier for a quantifier written without a
// bound.
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

std::size_t node_count(const Formula& f);

}  // namespace smullyan::arith
