#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "smullyan/setexpr.hpp"
#include "smullyan/symbol.hpp"

namespace oracle {

using smullyan::Alphabet;
using smullyan::Parity;
using smullyan::SetExpr;
using smullyan::SmStr;
using smullyan::Symbol;

// Membership by structural recursion with explicit search over split points.
class Denotation {
 public:
  bool member(const SetExpr& e, const SmStr& x) {
    memo_.clear();
    return in(e, x, 0, x.size());
  }

 private:
  bool in(const SetExpr& e, const SmStr& x, std::size_t lo, std::size_t hi) {
    using K = SetExpr::Kind;
    switch (e.kind()) {
      case K::Empty: return false;
      case K::Eps: return lo == hi;
      case K::Lit: return x.substr(lo, hi - lo) == e.literal();
      case K::Concat:
        for (std::size_t m = lo; m <= hi; ++m)
          if (in(e.left(), x, lo, m) && in(e.right(), x, m, hi)) return true;
        return false;
      case K::Union: return in(e.left(), x, lo, hi) || in(e.right(), x, lo, hi);
      case K::Star: {
        if (lo == hi) return true;
        // First factor nonempty; the rest is again in the star.
        for (std::size_t m = lo + 1; m <= hi; ++m)
          if (in(e.left(), x, lo, m) && in(e, x, m, hi)) return true;
        return false;
      }
      case K::LinPow: {
        std::size_t len = hi - lo;
        for (std::size_t i = 0;; ++i) {
          std::size_t n = e.step() * i + e.offset();
          if (power(e.left(), n, x, lo, hi)) return true;
          if (e.step() == 0 || n > len + e.offset() + 1) return false;
        }
      }
      case K::CountParity: {
        std::size_t c = 0;
        for (std::size_t i = lo; i < hi; ++i) c += x[i] == e.counted();
        return (c % 2 == 0) == (e.parity() == Parity::Even);
      }
    }
    return false;
  }

  bool power(const SetExpr& e, std::size_t n, const SmStr& x, std::size_t lo, std::size_t hi) {
    if (n == 0) return lo == hi;
    auto key = std::make_tuple(&e, n, lo, hi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = false;
    for (std::size_t m = lo; m <= hi && !r; ++m) r = in(e, x, lo, m) && power(e, n - 1, x, m, hi);
    memo_[key] = r;
    return r;
  }

  std::map<std::tuple<const SetExpr*, std::size_t, std::size_t, std::size_t>, bool> memo_;
};

inline bool denotes(const SetExpr& e, const SmStr& x) { return Denotation{}.member(e, x); }

inline SetExpr random_setexpr(std::mt19937_64& rng, const Alphabet& alpha, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto sym = [&] { return alpha.finite_symbols()[static_cast<std::size_t>(pick(static_cast<int>(alpha.size())))]; };
  int choice = depth <= 0 ? pick(4) : pick(9);
  switch (choice) {
    case 0: return pick(4) == 0 ? SetExpr::empty() : SetExpr::eps();
    case 1:
    case 2: {
      std::vector<Symbol> s;
      int len = 1 + pick(3);
      for (int i = 0; i < len; ++i) s.push_back(sym());
      return SetExpr::lit(SmStr(std::move(s)));
    }
    case 3: return SetExpr::count_parity(sym(), pick(2) == 0 ? Parity::Even : Parity::Odd);
    case 4:
    case 5: return SetExpr::concat(random_setexpr(rng, alpha, depth - 1), random_setexpr(rng, alpha, depth - 1));
    case 6: return SetExpr::union_of(random_setexpr(rng, alpha, depth - 1), random_setexpr(rng, alpha, depth - 1));
    case 7: return SetExpr::star(random_setexpr(rng, alpha, depth - 1));
    default:
      return SetExpr::lin_pow(random_setexpr(rng, alpha, depth - 1), static_cast<std::size_t>(pick(4)),
                              static_cast<std::size_t>(pick(3)));
  }
}

inline std::vector<SmStr> strings_upto(const Alphabet& alpha, std::size_t max_len) {
  std::vector<SmStr> out{SmStr{}};
  std::vector<SmStr> layer{SmStr{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<SmStr> next;
    for (const auto& x : layer)
      for (const auto& s : alpha.finite_symbols()) next.push_back(x + SmStr{s});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace oracle
