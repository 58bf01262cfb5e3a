#include "smullyan/arith/ast.hpp"

#include <cctype>
#include <charconv>

#include "smullyan/error.hpp"

namespace smullyan::arith {

std::string var_name(VarId id) { return id == kV ? "v" : "x" + std::to_string(id); }

VarId parse_var_name(std::string_view name) {
  if (name == "v") return kV;
  if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
    VarId id = 0;
    auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), id);
    if (ec == std::errc() && p == name.data() + name.size() && id >= 1) return id;
  }
  throw Error(Errc::SyntaxError, "variable names are v, x1, x2, ...: '" + std::string(name) + "'");
}

// ---- Term ----

Term Term::var(VarId id) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = id;
  return Term(std::move(n));
}

Term Term::num(BigInt value) {
  if (value < 0) throw Error(Errc::BadInput, "numerals are naturals");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->value = std::move(value);
  return Term(std::move(n));
}

Term Term::add(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->kids = {std::move(a), std::move(b)};
  return Term(std::move(n));
}

Term Term::mul(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->kids = {std::move(a), std::move(b)};
  return Term(std::move(n));
}

Term Term::d(Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::D;
  n->kids = {std::move(arg)};
  return Term(std::move(n));
}

VarId Term::var_id() const {
  if (kind() != Kind::Var) throw Error(Errc::BadInput, "not a variable");
  return node_->var;
}

const BigInt& Term::value() const {
  if (kind() != Kind::Num) throw Error(Errc::BadInput, "not a numeral");
  return node_->value;
}

const Term& Term::lhs() const { return node_->kids.at(0); }
const Term& Term::rhs() const { return node_->kids.at(1); }
const Term& Term::arg() const { return node_->kids.at(0); }

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Var: return node_->var == o.node_->var;
    case Kind::Num: return node_->value == o.node_->value;
    default: return node_->kids == o.node_->kids;
  }
}

// ---- Formula ----

namespace {

template <class Node, class Kind>
std::shared_ptr<Node> fnode(Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

}  // namespace

Formula Formula::bot() { return Formula(fnode<Node>(Kind::Bot)); }

Formula Formula::eq(Term a, Term b) {
  auto n = fnode<Node>(Kind::Eq);
  n->terms = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::leq(Term a, Term b) {
  auto n = fnode<Node>(Kind::Leq);
  n->terms = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = fnode<Node>(Kind::Not);
  n->kids = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = fnode<Node>(Kind::And);
  n->kids = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = fnode<Node>(Kind::Or);
  n->kids = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::imp(Formula a, Formula b) {
  auto n = fnode<Node>(Kind::Imp);
  n->kids = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::forall(VarId x, Term bound, Formula body) {
  auto n = fnode<Node>(Kind::Forall);
  n->var = x;
  n->terms = {std::move(bound)};
  n->kids = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::exists(VarId x, Term bound, Formula body) {
  auto n = fnode<Node>(Kind::Exists);
  n->var = x;
  n->terms = {std::move(bound)};
  n->kids = {std::move(body)};
  return Formula(std::move(n));
}

const Term& Formula::lhs() const { return node_->terms.at(0); }
const Term& Formula::rhs() const { return node_->terms.at(1); }
const Formula& Formula::sub() const { return node_->kids.at(0); }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
VarId Formula::bound_var() const { return node_->var; }
const Term& Formula::bound() const { return node_->terms.at(0); }
const Formula& Formula::body() const { return node_->kids.at(0); }

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  return kind() == o.kind() && node_->var == o.node_->var && node_->terms == o.node_->terms &&
         node_->kids == o.node_->kids;
}

Formula negate_n(Formula f, std::size_t times) {
  for (std::size_t i = 0; i < times; ++i) f = Formula::neg(std::move(f));
  return f;
}

// ---- structural queries ----

namespace {

void collect(const Term& t, std::set<VarId>& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.var_id()); break;
    case Term::Kind::Num: break;
    case Term::Kind::D: collect(t.arg(), out); break;
    default:
      collect(t.lhs(), out);
      collect(t.rhs(), out);
  }
}

void collect(const Formula& f, std::set<VarId>& out) {
  switch (f.kind()) {
    case Formula::Kind::Bot: break;
    case Formula::Kind::Eq:
    case Formula::Kind::Leq:
      collect(f.lhs(), out);
      collect(f.rhs(), out);
      break;
    case Formula::Kind::Not: collect(f.sub(), out); break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      collect(f.bound(), out);
      std::set<VarId> inner;
      collect(f.body(), inner);
      inner.erase(f.bound_var());
      out.insert(inner.begin(), inner.end());
      break;
    }
    default:
      collect(f.left(), out);
      collect(f.right(), out);
  }
}

}  // namespace

std::set<VarId> free_vars(const Term& t) {
  std::set<VarId> out;
  collect(t, out);
  return out;
}

std::set<VarId> free_vars(const Formula& f) {
  std::set<VarId> out;
  collect(f, out);
  return out;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }
bool is_closed(const Formula& f) { return free_vars(f).empty(); }

bool contains_d(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Num: return false;
    case Term::Kind::D: return true;
    default: return contains_d(t.lhs()) || contains_d(t.rhs());
  }
}

bool contains_d(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot: return false;
    case Formula::Kind::Eq:
    case Formula::Kind::Leq: return contains_d(f.lhs()) || contains_d(f.rhs());
    case Formula::Kind::Not: return contains_d(f.sub());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return contains_d(f.bound()) || contains_d(f.body());
    default: return contains_d(f.left()) || contains_d(f.right());
  }
}

std::size_t node_count(const Formula& f) {
  auto terms = [](const Term& t) {
    std::size_t n = 0;
    auto rec = [&](auto&& self, const Term& u) -> void {
      ++n;
      if (u.kind() == Term::Kind::D) self(self, u.arg());
      else if (u.kind() == Term::Kind::Add || u.kind() == Term::Kind::Mul) {
        self(self, u.lhs());
        self(self, u.rhs());
      }
    };
    rec(rec, t);
    return n;
  };
  switch (f.kind()) {
    case Formula::Kind::Bot: return 1;
    case Formula::Kind::Eq:
    case Formula::Kind::Leq: return 1 + terms(f.lhs()) + terms(f.rhs());
    case Formula::Kind::Not: return 1 + node_count(f.sub());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 1 + terms(f.bound()) + node_count(f.body());
    default: return 1 + node_count(f.left()) + node_count(f.right());
  }
}

// ---- substitution ----

Term replace_free(const Term& t, VarId x, const Term& by) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.var_id() == x ? by : t;
    case Term::Kind::Num: return t;
    case Term::Kind::D: return Term::d(replace_free(t.arg(), x, by));
    case Term::Kind::Add: return Term::add(replace_free(t.lhs(), x, by), replace_free(t.rhs(), x, by));
    case Term::Kind::Mul: return Term::mul(replace_free(t.lhs(), x, by), replace_free(t.rhs(), x, by));
  }
  return t;
}

Formula replace_free(const Formula& f, VarId x, const Term& t) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot: return f;
    case K::Eq: return Formula::eq(replace_free(f.lhs(), x, t), replace_free(f.rhs(), x, t));
    case K::Leq: return Formula::leq(replace_free(f.lhs(), x, t), replace_free(f.rhs(), x, t));
    case K::Not: return Formula::neg(replace_free(f.sub(), x, t));
    case K::And: return Formula::conj(replace_free(f.left(), x, t), replace_free(f.right(), x, t));
    case K::Or: return Formula::disj(replace_free(f.left(), x, t), replace_free(f.right(), x, t));
    case K::Imp: return Formula::imp(replace_free(f.left(), x, t), replace_free(f.right(), x, t));
    case K::Forall:
    case K::Exists: {
      Term bound = replace_free(f.bound(), x, t);
      Formula body = f.bound_var() == x ? f.body() : replace_free(f.body(), x, t);
      return f.kind() == K::Forall ? Formula::forall(f.bound_var(), bound, body)
                                   : Formula::exists(f.bound_var(), bound, body);
    }
  }
  return f;
}

Formula subst(const Formula& f, VarId x, const Term& t) {
  if (!is_closed(t)) throw Error(Errc::OpenTerm, "substituted term " + to_sexpr(t) + " has free variables");
  return replace_free(f, x, t);
}

// ---- s-expressions ----

namespace {

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out += var_name(t.var_id()); return;
    case Term::Kind::Num:
      out += "(num ";
      out += t.value().str();
      out += ')';
      return;
    case Term::Kind::D:
      out += "(d ";
      print(t.arg(), out);
      out += ')';
      return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      out += t.kind() == Term::Kind::Add ? "(add " : "(mul ";
      print(t.lhs(), out);
      out += ' ';
      print(t.rhs(), out);
      out += ')';
      return;
  }
}

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot: out += "(bot)"; return;
    case K::Eq:
    case K::Leq:
      out += f.kind() == K::Eq ? "(eq " : "(leq ";
      print(f.lhs(), out);
      out += ' ';
      print(f.rhs(), out);
      out += ')';
      return;
    case K::Not:
      out += "(not ";
      print(f.sub(), out);
      out += ')';
      return;
    case K::Forall:
    case K::Exists:
      out += f.kind() == K::Forall ? "(forall " : "(exists ";
      out += var_name(f.bound_var());
      out += ' ';
      print(f.bound(), out);
      out += ' ';
      print(f.body(), out);
      out += ')';
      return;
    default:
      out += f.kind() == K::And ? "(and " : f.kind() == K::Or ? "(or " : "(imp ";
      print(f.left(), out);
      out += ' ';
      print(f.right(), out);
      out += ')';
  }
}

// Generic s-expression tree, then interpreted as a term or formula.
struct Sx {
  std::string atom;  // empty for lists
  std::vector<Sx> items;
  std::size_t pos = 0;
  bool is_list() const { return atom.empty(); }
};

class SxReader {
 public:
  explicit SxReader(std::string_view text) : text_(text) {}

  Sx read_all() {
    Sx x = read();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::SyntaxError, why + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Sx read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    Sx x;
    x.pos = pos_;
    if (text_[pos_] == '(') {
      ++pos_;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) fail("unclosed '('");
        if (text_[pos_] == ')') {
          ++pos_;
          return x;
        }
        x.items.push_back(read());
      }
    }
    if (text_[pos_] == ')') fail("unexpected ')'");
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      x.atom += text_[pos_++];
    return x;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void bad(const Sx& x, const std::string& why) {
  throw Error(Errc::SyntaxError, why + " at position " + std::to_string(x.pos));
}

BigInt parse_decimal(const Sx& x) {
  if (x.atom.empty()) bad(x, "expected a decimal numeral");
  for (char c : x.atom)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad(x, "expected a decimal numeral, got '" + x.atom + "'");
  if (x.atom.size() > 1 && x.atom[0] == '0') bad(x, "numeral with leading zero");
  return BigInt(x.atom);
}

const std::string& head(const Sx& x) {
  if (x.items.empty() || x.items[0].is_list()) bad(x, "expected an operator");
  return x.items[0].atom;
}

void arity(const Sx& x, std::size_t n) {
  if (x.items.size() != n + 1) bad(x, "'" + x.items[0].atom + "' takes " + std::to_string(n) + " argument(s)");
}

Term to_term(const Sx& x) {
  if (!x.is_list()) {
    if (std::isdigit(static_cast<unsigned char>(x.atom[0]))) return Term::num(parse_decimal(x));
    return Term::var(parse_var_name(x.atom));
  }
  const auto& op = head(x);
  if (op == "num") {
    arity(x, 1);
    return Term::num(parse_decimal(x.items[1]));
  }
  if (op == "var") {
    arity(x, 1);
    if (x.items[1].is_list()) bad(x.items[1], "expected a variable name");
    return Term::var(parse_var_name(x.items[1].atom));
  }
  if (op == "d") {
    arity(x, 1);
    return Term::d(to_term(x.items[1]));
  }
  if (op == "add" || op == "mul") {
    arity(x, 2);
    auto a = to_term(x.items[1]);
    auto b = to_term(x.items[2]);
    return op == "add" ? Term::add(a, b) : Term::mul(a, b);
  }
  bad(x, "unknown term operator '" + op + "'");
}

Formula to_formula(const Sx& x) {
  if (!x.is_list()) {
    if (x.atom == "bot") return Formula::bot();
    bad(x, "expected a formula, got '" + x.atom + "'");
  }
  const auto& op = head(x);
  if (op == "bot") {
    arity(x, 0);
    return Formula::bot();
  }
  if (op == "eq" || op == "leq") {
    arity(x, 2);
    auto a = to_term(x.items[1]);
    auto b = to_term(x.items[2]);
    return op == "eq" ? Formula::eq(a, b) : Formula::leq(a, b);
  }
  if (op == "not") {
    arity(x, 1);
    return Formula::neg(to_formula(x.items[1]));
  }
  if (op == "and" || op == "or" || op == "imp") {
    arity(x, 2);
    auto a = to_formula(x.items[1]);
    auto b = to_formula(x.items[2]);
    if (op == "and") return Formula::conj(a, b);
    if (op == "or") return Formula::disj(a, b);
    return Formula::imp(a, b);
  }
  if (op == "forall" || op == "exists") {
    if (x.items.size() == 3)
      throw Error(Errc::UnboundedQuantifier, "quantifier at position " + std::to_string(x.pos) + " has no bound");
    arity(x, 3);
    if (x.items[1].is_list()) bad(x.items[1], "expected a variable name");
    VarId var = parse_var_name(x.items[1].atom);
    auto bound = to_term(x.items[2]);
    auto body = to_formula(x.items[3]);
    return op == "forall" ? Formula::forall(var, bound, body) : Formula::exists(var, bound, body);
  }
  bad(x, "unknown formula operator '" + op + "'");
}

}  // namespace

std::string to_sexpr(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_sexpr(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_sexpr(const Expr& e) {
  return std::visit([](const auto& x) { return to_sexpr(x); }, e);
}

Formula parse_formula(std::string_view text) { return to_formula(SxReader(text).read_all()); }
Term parse_term(std::string_view text) { return to_term(SxReader(text).read_all()); }

}  // namespace smullyan::arith
