#include "smullyan/acceptor.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "smullyan/error.hpp"

namespace smullyan {

namespace {

// Epsilon-NFA under construction. Fragments have one entry and one exit.
struct EpsNfa {
  std::vector<std::vector<std::uint32_t>> eps;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges;  // (symbol, target)

  std::uint32_t add_state() {
    eps.emplace_back();
    edges.emplace_back();
    return static_cast<std::uint32_t>(eps.size() - 1);
  }
};

struct Fragment {
  std::uint32_t entry;
  std::uint32_t exit;
};

class Builder {
 public:
  Builder(EpsNfa& nfa, const Alphabet& alphabet) : nfa_(nfa), alphabet_(alphabet) {}

  Fragment build(const SetExpr& e) {
    using K = SetExpr::Kind;
    switch (e.kind()) {
      case K::Empty: {
        return {nfa_.add_state(), nfa_.add_state()};
      }
      case K::Eps: {
        Fragment f{nfa_.add_state(), nfa_.add_state()};
        nfa_.eps[f.entry].push_back(f.exit);
        return f;
      }
      case K::Lit: {
        std::uint32_t entry = nfa_.add_state();
        std::uint32_t cur = entry;
        for (const auto& s : e.literal()) {
          std::uint32_t next = nfa_.add_state();
          nfa_.edges[cur].emplace_back(symbol_index(s), next);
          cur = next;
        }
        return {entry, cur};
      }
      case K::Concat: {
        Fragment a = build(e.left());
        Fragment b = build(e.right());
        nfa_.eps[a.exit].push_back(b.entry);
        return {a.entry, b.exit};
      }
      case K::Union: {
        Fragment a = build(e.left());
        Fragment b = build(e.right());
        Fragment f{nfa_.add_state(), nfa_.add_state()};
        nfa_.eps[f.entry].push_back(a.entry);
        nfa_.eps[f.entry].push_back(b.entry);
        nfa_.eps[a.exit].push_back(f.exit);
        nfa_.eps[b.exit].push_back(f.exit);
        return f;
      }
      case K::Star: {
        Fragment a = build(e.left());
        Fragment f{nfa_.add_state(), nfa_.add_state()};
        nfa_.eps[f.entry].push_back(a.entry);
        nfa_.eps[f.entry].push_back(f.exit);
        nfa_.eps[a.exit].push_back(a.entry);
        nfa_.eps[a.exit].push_back(f.exit);
        return f;
      }
      case K::LinPow:
        return build(e.desugar_lin_pow());
      case K::CountParity: {
        std::uint32_t counted = symbol_index(e.counted());
        Fragment f{nfa_.add_state(), nfa_.add_state()};
        std::uint32_t even = nfa_.add_state();
        std::uint32_t odd = nfa_.add_state();
        nfa_.eps[f.entry].push_back(even);
        for (std::uint32_t s = 0; s < alphabet_.size(); ++s) {
          if (s == counted) {
            nfa_.edges[even].emplace_back(s, odd);
            nfa_.edges[odd].emplace_back(s, even);
          } else {
            nfa_.edges[even].emplace_back(s, even);
            nfa_.edges[odd].emplace_back(s, odd);
          }
        }
        nfa_.eps[e.parity() == Parity::Even ? even : odd].push_back(f.exit);
        return f;
      }
    }
    throw Error(Errc::BadInput, "unknown descriptor node");
  }

 private:
  std::uint32_t symbol_index(const Symbol& s) const {
    auto idx = alphabet_.index_of(s);
    if (!idx) throw Error(Errc::UnknownSymbol, "symbol '" + s.to_dsl() + "' is not in the alphabet");
    return static_cast<std::uint32_t>(*idx);
  }

  EpsNfa& nfa_;
  const Alphabet& alphabet_;
};

StateSet closure_of(const EpsNfa& nfa, std::uint32_t q) {
  StateSet seen(nfa.eps.size(), false);
  std::vector<std::uint32_t> stack{q};
  seen[q] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (auto t : nfa.eps[s])
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  return seen;
}

}  // namespace

LangAcceptor compile(const SetExpr& e, const Alphabet& alphabet) {
  if (!alphabet.is_finite())
    throw Error(Errc::InfiniteAlphabet, "descriptors compile only over finite alphabets");
  EpsNfa nfa;
  Fragment top = Builder(nfa, alphabet).build(e);
  const std::size_t n = nfa.eps.size();

  std::vector<StateSet> closures;
  closures.reserve(n);
  for (std::uint32_t q = 0; q < n; ++q) closures.push_back(closure_of(nfa, q));

  // Simulation sets are kept epsilon-closed: a symbol step from q lands on
  // the closure of its direct successors.
  LangAcceptor a;
  a.alphabet_ = alphabet;
  a.delta_.assign(n, std::vector<std::vector<std::uint32_t>>(alphabet.size()));
  for (std::uint32_t q = 0; q < n; ++q) {
    for (auto [sym, target] : nfa.edges[q]) {
      const auto& cl = closures[target];
      auto& out = a.delta_[q][sym];
      for (std::uint32_t t = 0; t < n; ++t)
        if (cl[t]) out.push_back(t);
    }
    for (auto& row : a.delta_[q]) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }
  a.accepting_.assign(n, false);
  a.accepting_[top.exit] = true;
  a.start_ = closures[top.entry];
  return a;
}

StateSet LangAcceptor::step(const StateSet& from, std::uint32_t symbol) const {
  StateSet next(state_count(), false);
  for (std::size_t q = 0; q < from.size(); ++q)
    if (from[q])
      for (auto t : delta_[q][symbol]) next[t] = true;
  return next;
}

bool LangAcceptor::accepting(const StateSet& set) const {
  for (std::size_t q = 0; q < set.size(); ++q)
    if (set[q] && accepting_[q]) return true;
  return false;
}

bool LangAcceptor::is_empty(const StateSet& set) {
  for (bool b : set)
    if (b) return false;
  return true;
}

bool LangAcceptor::accepts_word(std::span<const std::uint32_t> word) const {
  StateSet cur = start_;
  for (auto s : word) {
    if (s >= alphabet_.size()) throw Error(Errc::UnknownSymbol, "symbol index out of range");
    cur = step(cur, s);
    if (is_empty(cur)) return false;
  }
  return accepting(cur);
}

bool LangAcceptor::accepts(const SmStr& x) const { return accepts_word(to_word(x, alphabet_)); }

Word to_word(const SmStr& x, const Alphabet& alphabet) {
  Word w;
  w.reserve(x.size());
  for (const auto& s : x) {
    auto idx = alphabet.index_of(s);
    if (!idx) throw Error(Errc::UnknownSymbol, "symbol '" + s.to_dsl() + "' is not in the alphabet");
    w.push_back(static_cast<std::uint32_t>(*idx));
  }
  return w;
}

SmStr from_word(std::span<const std::uint32_t> w, const Alphabet& alphabet) {
  std::vector<Symbol> syms;
  syms.reserve(w.size());
  for (auto i : w) syms.push_back(alphabet.finite_symbols().at(i));
  return SmStr(std::move(syms));
}

std::vector<SmStr> all_strings(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<SmStr> out{SmStr{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (const auto& s : alphabet.finite_symbols()) out.push_back(out[i] + SmStr{s});
    layer_begin = layer_end;
  }
  return out;
}

std::vector<SmStr> enumerate(const LangAcceptor& a, std::size_t max_len) {
  const std::size_t n = a.state_count();
  const auto k = static_cast<std::uint32_t>(a.alphabet().size());
  // live[r][q]: some path of exactly r symbols leads from q to acceptance.
  std::vector<StateSet> live(max_len + 1, StateSet(n, false));
  for (std::size_t q = 0; q < n; ++q) {
    StateSet single(n, false);
    single[q] = true;
    live[0][q] = a.accepting(single);
  }
  for (std::size_t r = 1; r <= max_len; ++r)
    for (std::size_t q = 0; q < n; ++q) {
      StateSet single(n, false);
      single[q] = true;
      for (std::uint32_t s = 0; s < k && !live[r][q]; ++s) {
        StateSet next = a.step(single, s);
        for (std::size_t t = 0; t < n; ++t)
          if (next[t] && live[r - 1][t]) {
            live[r][q] = true;
            break;
          }
      }
    }
  auto intersects = [&](const StateSet& set, const StateSet& mask) {
    for (std::size_t q = 0; q < n; ++q)
      if (set[q] && mask[q]) return true;
    return false;
  };

  std::vector<SmStr> out;
  Word word;
  for (std::size_t len = 0; len <= max_len; ++len) {
    // Depth-first in symbol order yields lexicographic order within a length.
    auto dfs = [&](auto&& self, const StateSet& cur) -> void {
      std::size_t remaining = len - word.size();
      if (!intersects(cur, live[remaining])) return;
      if (remaining == 0) {
        out.push_back(from_word(word, a.alphabet()));
        return;
      }
      for (std::uint32_t s = 0; s < k; ++s) {
        word.push_back(s);
        self(self, a.step(cur, s));
        word.pop_back();
      }
    };
    dfs(dfs, a.start());
  }
  return out;
}

BoundedComparison equal_up_to(const LangAcceptor& a, const LangAcceptor& b, std::size_t max_len) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(Errc::BadInput, "equal_up_to requires acceptors over the same alphabet");
  const auto k = static_cast<std::uint32_t>(a.alphabet().size());
  struct Node {
    StateSet sa, sb;
    Word word;
  };
  // Breadth-first by length. Within a layer nodes are kept in lex order of
  // their first (hence least) reaching word, and a pair of subsets is kept
  // only once per layer.
  std::vector<Node> layer{Node{a.start(), b.start(), {}}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& node : layer)
      if (a.accepting(node.sa) != b.accepting(node.sb))
        return {false, from_word(node.word, a.alphabet())};
    if (len == max_len) return {true, std::nullopt};
    std::vector<Node> next;
    std::set<std::pair<StateSet, StateSet>> seen;
    for (const auto& node : layer)
      for (std::uint32_t s = 0; s < k; ++s) {
        StateSet na = a.step(node.sa, s);
        StateSet nb = b.step(node.sb, s);
        if (LangAcceptor::is_empty(na) && LangAcceptor::is_empty(nb)) continue;
        if (!seen.insert({na, nb}).second) continue;
        Word w = node.word;
        w.push_back(s);
        next.push_back(Node{std::move(na), std::move(nb), std::move(w)});
      }
    if (next.empty()) return {true, std::nullopt};
    layer = std::move(next);
  }
}

}  // namespace smullyan
