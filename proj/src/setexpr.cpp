#include "smullyan/setexpr.hpp"

#include <cctype>
#include <limits>

#include "smullyan/error.hpp"

namespace smullyan {

struct SetExpr::Node {
  Kind kind = Kind::Empty;
  SmStr lit;
  std::vector<SetExpr> kids;
  std::size_t step = 0;
  std::size_t offset = 0;
  std::optional<Symbol> sym;
  Parity parity = Parity::Even;
};

namespace {

SetExpr::Node node_of(SetExpr::Kind kind) {
  SetExpr::Node n;
  n.kind = kind;
  return n;
}

}  // namespace

SetExpr SetExpr::empty() { return SetExpr(std::make_shared<const Node>(node_of(Kind::Empty))); }
SetExpr SetExpr::eps() { return SetExpr(std::make_shared<const Node>(node_of(Kind::Eps))); }

SetExpr SetExpr::lit(SmStr s) {
  if (s.empty()) return eps();
  Node n = node_of(Kind::Lit);
  n.lit = std::move(s);
  return SetExpr(std::make_shared<const Node>(std::move(n)));
}

SetExpr SetExpr::concat(SetExpr a, SetExpr b) {
  Node n = node_of(Kind::Concat);
  n.kids = {std::move(a), std::move(b)};
  return SetExpr(std::make_shared<const Node>(std::move(n)));
}

SetExpr SetExpr::union_of(SetExpr a, SetExpr b) {
  Node n = node_of(Kind::Union);
  n.kids = {std::move(a), std::move(b)};
  return SetExpr(std::make_shared<const Node>(std::move(n)));
}

SetExpr SetExpr::star(SetExpr a) {
  Node n = node_of(Kind::Star);
  n.kids = {std::move(a)};
  return SetExpr(std::make_shared<const Node>(std::move(n)));
}

SetExpr SetExpr::lin_pow(SetExpr e, std::size_t step, std::size_t offset) {
  Node n = node_of(Kind::LinPow);
  n.kids = {std::move(e)};
  n.step = step;
  n.offset = offset;
  return SetExpr(std::make_shared<const Node>(std::move(n)));
}

SetExpr SetExpr::count_parity(Symbol sym, Parity parity) {
  Node n = node_of(Kind::CountParity);
  n.sym = std::move(sym);
  n.parity = parity;
  return SetExpr(std::make_shared<const Node>(std::move(n)));
}

SetExpr::Kind SetExpr::kind() const noexcept { return node_->kind; }
const SmStr& SetExpr::literal() const { return node_->lit; }

const SetExpr& SetExpr::left() const { return node_->kids.at(0); }
const SetExpr& SetExpr::right() const { return node_->kids.at(1); }
std::size_t SetExpr::step() const { return node_->step; }
std::size_t SetExpr::offset() const { return node_->offset; }
const Symbol& SetExpr::counted() const { return *node_->sym; }
Parity SetExpr::parity() const { return node_->parity; }

SetExpr SetExpr::desugar_lin_pow() const {
  const SetExpr& base = left();
  auto power = [&](std::size_t k) {
    if (k == 0) return eps();
    SetExpr out = base;
    for (std::size_t i = 1; i < k; ++i) out = concat(out, base);
    return out;
  };
  return concat(power(offset()), star(power(step())));
}

std::string SetExpr::to_dsl() const {
  switch (kind()) {
    case Kind::Empty: return "0";
    case Kind::Eps: return "eps";
    case Kind::Lit: return "'" + literal().to_dsl() + "'";
    case Kind::Concat: return "(" + left().to_dsl() + " . " + right().to_dsl() + ")";
    case Kind::Union: return "(" + left().to_dsl() + " + " + right().to_dsl() + ")";
    case Kind::Star: return "(" + left().to_dsl() + ")*";
    case Kind::LinPow:
      return "(" + left().to_dsl() + ")^{" + std::to_string(step()) + "i+" + std::to_string(offset()) + "}";
    case Kind::CountParity:
      return "par(" + counted().to_dsl() + "," + (parity() == Parity::Even ? "even" : "odd") + ")";
  }
  return "0";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

  SetExpr parse() {
    SetExpr e = parse_union();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool peek_word(std::string_view w) {
    skip_ws();
    return text_.substr(pos_, w.size()) == w;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_word(std::string_view w) {
    if (!peek_word(w)) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }

  bool at_atom_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '0' || c == '\'' || c == '(' || peek_word("eps") || peek_word("par(");
  }

  std::size_t parse_nat() {
    skip_ws();
    std::size_t begin = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t digit = static_cast<std::size_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::size_t>::max() - digit) / 10) fail("number too large");
      value = value * 10 + digit;
      ++pos_;
    }
    if (pos_ == begin) fail("expected a natural number");
    return value;
  }

  Symbol parse_symbol() {
    skip_ws();
    std::size_t start = pos_;
    Symbol s = scan_symbol(text_, pos_);
    if (!alphabet_.contains(s))
      throw Error(Errc::UnknownSymbol,
                  "symbol '" + s.to_dsl() + "' at position " + std::to_string(start) + " is not in the alphabet");
    return s;
  }

  SetExpr parse_union() {
    SetExpr e = parse_concat();
    while (peek('+')) {
      ++pos_;
      e = SetExpr::union_of(e, parse_concat());
    }
    return e;
  }

  SetExpr parse_concat() {
    SetExpr e = parse_postfix();
    for (;;) {
      if (peek('.')) {
        ++pos_;
        e = SetExpr::concat(e, parse_postfix());
      } else if (at_atom_start()) {
        e = SetExpr::concat(e, parse_postfix());
      } else {
        return e;
      }
    }
  }

  SetExpr parse_postfix() {
    SetExpr e = parse_atom();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        e = SetExpr::star(e);
      } else if (peek_word("^{")) {
        pos_ += 2;
        std::size_t step = parse_nat();
        skip_ws();
        expect_word("i");
        expect('+');
        std::size_t offset = parse_nat();
        expect('}');
        e = SetExpr::lin_pow(e, step, offset);
      } else {
        return e;
      }
    }
  }

  SetExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of descriptor");
    if (peek_word("eps")) {
      pos_ += 3;
      return SetExpr::eps();
    }
    if (peek_word("par(")) {
      pos_ += 4;
      Symbol s = parse_symbol();
      expect(',');
      Parity p;
      if (peek_word("even")) {
        pos_ += 4;
        p = Parity::Even;
      } else if (peek_word("odd")) {
        pos_ += 3;
        p = Parity::Odd;
      } else {
        fail("expected 'even' or 'odd'");
      }
      expect(')');
      return SetExpr::count_parity(std::move(s), p);
    }
    char c = text_[pos_];
    if (c == '0') {
      ++pos_;
      return SetExpr::empty();
    }
    if (c == '(') {
      ++pos_;
      SetExpr e = parse_union();
      expect(')');
      return e;
    }
    if (c == '\'') {
      ++pos_;
      std::vector<Symbol> syms;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated string literal");
        if (text_[pos_] == '\'') break;
        syms.push_back(parse_symbol());
      }
      if (syms.empty()) fail("empty string literal");
      ++pos_;
      return SetExpr::lit(SmStr(std::move(syms)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

SetExpr parse_setexpr(std::string_view text, const Alphabet& alphabet) { return Parser(text, alphabet).parse(); }

}  // namespace smullyan
