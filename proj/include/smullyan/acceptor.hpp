#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "smullyan/setexpr.hpp"
#include "smullyan/symbol.hpp"

namespace smullyan {

using StateSet = std::vector<bool>;
// A string as positions in the alphabet's declaration order.
using Word = std::vector<std::uint32_t>;

// Epsilon-free NFA over a finite alphabet. Immutable after compile().
class LangAcceptor {
 public:
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return accepting_.size(); }

  // Throws UnknownSymbol if x uses a symbol outside the alphabet.
  bool accepts(const SmStr& x) const;
  bool accepts_word(std::span<const std::uint32_t> word) const;

  const StateSet& start() const noexcept { return start_; }
  StateSet step(const StateSet& from, std::uint32_t symbol) const;
  bool accepting(const StateSet& set) const;
  static bool is_empty(const StateSet& set);

 private:
  friend LangAcceptor compile(const SetExpr& e, const Alphabet& alphabet);

  Alphabet alphabet_;
  // delta_[state][symbol] -> successor states
  std::vector<std::vector<std::vector<std::uint32_t>>> delta_;
  std::vector<bool> accepting_;
  StateSet start_;
};

// Thompson-style construction followed by epsilon elimination. Throws
// InfiniteAlphabet when the alphabet carries the indexed family.
LangAcceptor compile(const SetExpr& e, const Alphabet& alphabet);

// Accepted strings of length <= max_len in length-lexicographic order.
std::vector<SmStr> enumerate(const LangAcceptor& a, std::size_t max_len);

// Equal when the two languages agree on every string of length <= max_len;
// otherwise carries the length-lex least string on which they differ.
struct BoundedComparison {
  bool equal = true;
  std::optional<SmStr> witness;
};

BoundedComparison equal_up_to(const LangAcceptor& a, const LangAcceptor& b, std::size_t max_len);

Word to_word(const SmStr& x, const Alphabet& alphabet);
SmStr from_word(std::span<const std::uint32_t> w, const Alphabet& alphabet);

// All strings over the finite alphabet with length <= max_len, length-lex.
std::vector<SmStr> all_strings(const Alphabet& alphabet, std::size_t max_len);

}  // namespace smullyan
