#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "smullyan/symbol.hpp"

namespace smullyan {

enum class Parity { Even, Odd };

// A regular-language descriptor. Immutable; copies share structure.
//
// Textual form (whitespace insignificant):
//   expr    := concat ('+' concat)*
//   concat  := postfix ('.'? postfix)*          juxtaposition also concatenates
//   postfix := atom ('*' | '^{' NAT 'i+' NAT '}')*
//   atom    := '0' | 'eps' | "'" SYM+ "'" | 'par(' SYM ',' ('even'|'odd') ')' | '(' expr ')'
class SetExpr {
 public:
  enum class Kind { Empty, Eps, Lit, Concat, Union, Star, LinPow, CountParity };

  static SetExpr empty();
  static SetExpr eps();
  static SetExpr lit(SmStr s);
  static SetExpr concat(SetExpr a, SetExpr b);
  static SetExpr union_of(SetExpr a, SetExpr b);
  static SetExpr star(SetExpr a);
  // e^{step*i + offset} for i >= 0.
  static SetExpr lin_pow(SetExpr e, std::size_t step, std::size_t offset);
  static SetExpr count_parity(Symbol sym, Parity parity);

  Kind kind() const noexcept;
  const SmStr& literal() const;      // Lit
  const SetExpr& left() const;       // Concat, Union, Star (operand), LinPow (base)
  const SetExpr& right() const;      // Concat, Union
  std::size_t step() const;          // LinPow
  std::size_t offset() const;        // LinPow
  const Symbol& counted() const;     // CountParity
  Parity parity() const;             // CountParity

  // Concat(e^offset, Star(e^step)), with e^0 = Eps.
  SetExpr desugar_lin_pow() const;

  // Fully parenthesised DSL text that re-parses to an equivalent tree.
  std::string to_dsl() const;

  struct Node;

 private:
  explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Parses the descriptor DSL. Throws SyntaxError (message carries the byte
// position) or UnknownSymbol naming the offending token.
SetExpr parse_setexpr(std::string_view text, const Alphabet& alphabet);

}  // namespace smullyan
