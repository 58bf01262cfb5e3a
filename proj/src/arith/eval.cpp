#include "smullyan/arith/eval.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "smullyan/arith/codec.hpp"
#include "smullyan/error.hpp"

namespace smullyan::arith {

namespace {

struct Linear {
  BigInt a;  // coefficient of the quantified variable
  BigInt c;
};

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;
  if (q * d != n && ((n < 0) != (d < 0))) q -= 1;
  return q;
}

class Evaluator {
 public:
  explicit Evaluator(std::uint64_t budget) : budget_(budget) {}

  BigInt term(const Term& t) {
    tick();
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = env_.find(t.var_id());
        if (it == env_.end()) throw Error(Errc::NotClosed, "unbound variable " + var_name(t.var_id()));
        return it->second;
      }
      case Term::Kind::Num: return t.value();
      case Term::Kind::Add: return term(t.lhs()) + term(t.rhs());
      case Term::Kind::Mul: return term(t.lhs()) * term(t.rhs());
      case Term::Kind::D: return diag(term(t.arg()));
    }
    return 0;
  }

  bool formula(const Formula& f) {
    tick();
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Bot: return false;
      case K::Eq: return term(f.lhs()) == term(f.rhs());
      case K::Leq: return term(f.lhs()) <= term(f.rhs());
      case K::Not: return !formula(f.sub());
      case K::And: return formula(f.left()) && formula(f.right());
      case K::Or: return formula(f.left()) || formula(f.right());
      case K::Imp: return !formula(f.left()) || formula(f.right());
      case K::Forall:
      case K::Exists: return quantifier(f);
    }
    return false;
  }

 private:
  void tick(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > budget_) throw Error(Errc::EvaluationBudgetExceeded, "more than " + std::to_string(budget_) + " steps");
  }

  bool quantifier(const Formula& f) {
    const bool all = f.kind() == Formula::Kind::Forall;
    const VarId x = f.bound_var();
    BigInt bound = term(f.bound());

    std::optional<BigInt> saved;
    if (auto it = env_.find(x); it != env_.end()) saved = it->second;
    auto restore = [&] {
      if (saved) env_[x] = *saved;
      else env_.erase(x);
    };

    bool result = all;
    try {
      std::vector<BigInt> points;
      if (breakpoints(f.body(), x, bound, points)) {
        for (const auto& p : points) {
          env_[x] = p;
          if (formula(f.body()) != all) {
            result = !all;
            break;
          }
        }
      } else {
        if (bound + 1 > BigInt(budget_ - std::min(used_, budget_)))
          throw Error(Errc::EvaluationBudgetExceeded, "quantifier bound " + bound.str() + " is too large to iterate");
        for (BigInt k = 0; k <= bound; ++k) {
          env_[x] = k;
          if (formula(f.body()) != all) {
            result = !all;
            break;
          }
        }
      }
    } catch (...) {
      restore();
      throw;
    }
    restore();
    return result;
  }

  // The points of 0..bound at which the truth of `body` can change, when every
  // atom is linear in x; false when some atom is not.
  bool breakpoints(const Formula& body, VarId x, const BigInt& bound, std::vector<BigInt>& out) {
    std::vector<BigInt> roots_floor;
    if (!collect(body, x, roots_floor)) return false;
    out.push_back(0);
    out.push_back(bound);
    for (const auto& fl : roots_floor)
      for (int delta = -1; delta <= 2; ++delta) {
        BigInt p = fl + delta;
        if (p >= 0 && p <= bound) out.push_back(p);
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return true;
  }

  bool collect(const Formula& f, VarId x, std::vector<BigInt>& roots) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Bot: return true;
      case K::Eq:
      case K::Leq: {
        auto l = linear(f.lhs(), x);
        if (!l) return false;
        auto r = linear(f.rhs(), x);
        if (!r) return false;
        BigInt da = l->a - r->a;
        if (da != 0) roots.push_back(floor_div(r->c - l->c, da));
        return true;
      }
      case K::Not: return collect(f.sub(), x, roots);
      case K::Forall:
      case K::Exists: return free_vars(f).count(x) == 0;
      default: return collect(f.left(), x, roots) && collect(f.right(), x, roots);
    }
  }

  std::optional<Linear> linear(const Term& t, VarId x) {
    tick();
    switch (t.kind()) {
      case Term::Kind::Var:
        if (t.var_id() == x) return Linear{1, 0};
        return Linear{0, term(t)};
      case Term::Kind::Num: return Linear{0, t.value()};
      case Term::Kind::Add: {
        auto a = linear(t.lhs(), x);
        if (!a) return std::nullopt;
        auto b = linear(t.rhs(), x);
        if (!b) return std::nullopt;
        return Linear{a->a + b->a, a->c + b->c};
      }
      case Term::Kind::Mul: {
        auto a = linear(t.lhs(), x);
        if (!a) return std::nullopt;
        auto b = linear(t.rhs(), x);
        if (!b) return std::nullopt;
        if (a->a == 0) return Linear{a->c * b->a, a->c * b->c};
        if (b->a == 0) return Linear{b->c * a->a, b->c * a->c};
        return std::nullopt;
      }
      case Term::Kind::D: {
        auto a = linear(t.arg(), x);
        if (!a || a->a != 0) return std::nullopt;
        return Linear{0, diag(a->c)};
      }
    }
    return std::nullopt;
  }

  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  std::map<VarId, BigInt> env_;
};

}  // namespace

bool eval(const Formula& f, std::uint64_t budget) {
  auto fv = free_vars(f);
  if (!fv.empty()) throw Error(Errc::NotClosed, "formula has free variable " + var_name(*fv.begin()));
  return Evaluator(budget).formula(f);
}

BigInt eval_term(const Term& t, std::uint64_t budget) {
  auto fv = free_vars(t);
  if (!fv.empty()) throw Error(Errc::NotClosed, "term has free variable " + var_name(*fv.begin()));
  return Evaluator(budget).term(t);
}

Term d_normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Num: return t;
    case Term::Kind::Add: return Term::add(d_normalize(t.lhs()), d_normalize(t.rhs()));
    case Term::Kind::Mul: return Term::mul(d_normalize(t.lhs()), d_normalize(t.rhs()));
    case Term::Kind::D: {
      Term arg = d_normalize(t.arg());
      if (!is_closed(arg)) throw Error(Errc::OpenDArgument, "d applied to open term " + to_sexpr(arg));
      return Term::num(diag(eval_term(arg)));
    }
  }
  return t;
}

Formula d_normalize(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot: return f;
    case K::Eq: return Formula::eq(d_normalize(f.lhs()), d_normalize(f.rhs()));
    case K::Leq: return Formula::leq(d_normalize(f.lhs()), d_normalize(f.rhs()));
    case K::Not: return Formula::neg(d_normalize(f.sub()));
    case K::And: return Formula::conj(d_normalize(f.left()), d_normalize(f.right()));
    case K::Or: return Formula::disj(d_normalize(f.left()), d_normalize(f.right()));
    case K::Imp: return Formula::imp(d_normalize(f.left()), d_normalize(f.right()));
    case K::Forall: return Formula::forall(f.bound_var(), d_normalize(f.bound()), d_normalize(f.body()));
    case K::Exists: return Formula::exists(f.bound_var(), d_normalize(f.bound()), d_normalize(f.body()));
  }
  return f;
}

}  // namespace smullyan::arith
