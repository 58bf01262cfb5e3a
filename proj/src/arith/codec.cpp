#include "smullyan/arith/codec.hpp"

#include <iterator>
#include <limits>

#include "smullyan/error.hpp"

namespace smullyan::arith {

void put_varint(Bytes& out, const BigInt& n) {
  if (n < 0) throw Error(Errc::BadInput, "varints encode naturals");
  std::vector<std::uint8_t> groups;
  BigInt rest = n;
  do {
    groups.push_back(static_cast<std::uint8_t>(static_cast<unsigned>(rest & 0x7f)));
    rest >>= 7;
  } while (rest != 0);
  for (std::size_t i = groups.size(); i-- > 0;) out.push_back(i ? (groups[i] | 0x80) : groups[i]);
}

namespace {

void put(Bytes& out, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.push_back(tag::Var);
      put_varint(out, BigInt(t.var_id()));
      return;
    case Term::Kind::Num:
      out.push_back(tag::Num);
      put_varint(out, t.value());
      return;
    case Term::Kind::D:
      out.push_back(tag::D);
      put(out, t.arg());
      return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      out.push_back(t.kind() == Term::Kind::Add ? tag::Add : tag::Mul);
      put(out, t.lhs());
      put(out, t.rhs());
      return;
  }
}

void put(Bytes& out, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot: out.push_back(tag::Bot); return;
    case K::Eq:
    case K::Leq:
      out.push_back(f.kind() == K::Eq ? tag::Eq : tag::Leq);
      put(out, f.lhs());
      put(out, f.rhs());
      return;
    case K::Not:
      out.push_back(tag::Not);
      put(out, f.sub());
      return;
    case K::And:
    case K::Or:
    case K::Imp:
      out.push_back(f.kind() == K::And ? tag::And : f.kind() == K::Or ? tag::Or : tag::Imp);
      put(out, f.left());
      put(out, f.right());
      return;
    case K::Forall:
    case K::Exists:
      out.push_back(f.kind() == K::Forall ? tag::Forall : tag::Exists);
      put_varint(out, BigInt(f.bound_var()));
      put(out, f.bound());
      put(out, f.body());
      return;
  }
}

struct Truncated {};

class Reader {
 public:
  explicit Reader(const Bytes& b, std::size_t start) : bytes_(b), pos_(start) {}

  bool done() const { return pos_ == bytes_.size(); }

  std::uint8_t peek() const {
    if (done()) throw Truncated{};
    return bytes_[pos_];
  }

  std::uint8_t next() {
    std::uint8_t b = peek();
    ++pos_;
    return b;
  }

  // Rejects a leading 0x80 group so that each natural has one spelling.
  BigInt varint() {
    BigInt n = 0;
    std::uint8_t b = next();
    if (b == 0x80) throw Truncated{};
    for (;;) {
      n = (n << 7) | (b & 0x7f);
      if (!(b & 0x80)) return n;
      b = next();
    }
  }

  VarId var_id() {
    BigInt n = varint();
    if (n > BigInt(std::numeric_limits<VarId>::max())) throw Truncated{};
    return static_cast<VarId>(n);
  }

  Term term() {
    switch (next()) {
      case tag::Var: return Term::var(var_id());
      case tag::Num: return Term::num(varint());
      case tag::D: return Term::d(term());
      case tag::Add: {
        auto a = term();
        return Term::add(a, term());
      }
      case tag::Mul: {
        auto a = term();
        return Term::mul(a, term());
      }
      default: throw Truncated{};
    }
  }

  Formula formula() {
    switch (next()) {
      case tag::Bot: return Formula::bot();
      case tag::Eq: {
        auto a = term();
        return Formula::eq(a, term());
      }
      case tag::Leq: {
        auto a = term();
        return Formula::leq(a, term());
      }
      case tag::Not: return Formula::neg(formula());
      case tag::And: {
        auto a = formula();
        return Formula::conj(a, formula());
      }
      case tag::Or: {
        auto a = formula();
        return Formula::disj(a, formula());
      }
      case tag::Imp: {
        auto a = formula();
        return Formula::imp(a, formula());
      }
      case tag::Forall:
      case tag::Exists: {
        bool all = bytes_[pos_ - 1] == tag::Forall;
        VarId x = var_id();
        auto bound = term();
        auto body = formula();
        return all ? Formula::forall(x, bound, body) : Formula::exists(x, bound, body);
      }
      default: throw Truncated{};
    }
  }

 private:
  const Bytes& bytes_;
  std::size_t pos_;
};

}  // namespace

Bytes serialize(const Term& t) {
  Bytes out;
  put(out, t);
  return out;
}

Bytes serialize(const Formula& f) {
  Bytes out;
  put(out, f);
  return out;
}

BigInt bytes_to_natural(const Bytes& bytes) {
  BigInt n;
  if (bytes.empty()) return n;
  boost::multiprecision::import_bits(n, bytes.begin(), bytes.end(), 8, true);
  return n;
}

Bytes natural_to_bytes(const BigInt& n) {
  Bytes out;
  if (n == 0) return out;
  boost::multiprecision::export_bits(n, std::back_inserter(out), 8, true);
  return out;
}

namespace {

BigInt with_sentinel(Bytes payload) {
  payload.insert(payload.begin(), tag::Sentinel);
  return bytes_to_natural(payload);
}

}  // namespace

BigInt encode(const Term& t) { return with_sentinel(serialize(t)); }
BigInt encode(const Formula& f) { return with_sentinel(serialize(f)); }
BigInt encode(const Expr& e) {
  return std::visit([](const auto& x) { return encode(x); }, e);
}

std::optional<Expr> decode(const BigInt& code) {
  if (code <= 0) return std::nullopt;
  Bytes bytes = natural_to_bytes(code);
  if (bytes.size() < 2 || bytes[0] != tag::Sentinel) return std::nullopt;
  try {
    Reader r(bytes, 1);
    std::uint8_t t = r.peek();
    std::optional<Expr> out;
    if (t >= tag::Bot && t <= tag::Exists) out = r.formula();
    else if (t >= tag::Var && t <= tag::D) out = r.term();
    else return std::nullopt;
    if (!r.done()) return std::nullopt;
    return out;
  } catch (const Truncated&) {
    return std::nullopt;
  }
}

std::optional<Formula> decode_formula(const BigInt& code) {
  auto e = decode(code);
  if (!e || !std::holds_alternative<Formula>(*e)) return std::nullopt;
  return std::get<Formula>(*e);
}

bool is_v_formula(const BigInt& code) {
  auto f = decode_formula(code);
  if (!f) return false;
  for (VarId x : free_vars(*f))
    if (x != kV) return false;
  return true;
}

BigInt diag(const BigInt& i) {
  auto f = decode_formula(i);
  if (!f) return 0;
  for (VarId x : free_vars(*f))
    if (x != kV) return 0;
  return encode(subst(*f, kV, Term::num(i)));
}

}  // namespace smullyan::arith
