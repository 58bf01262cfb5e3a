#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace smullyan {

// Arbitrary-precision integer. Naturals (indices, codes, numerals) are stored
// in it as non-negative values; signed values appear only inside the
// arithmetic evaluator's linear solver.
using BigInt = boost::multiprecision::cpp_int;

// A symbol is either a plain token ("n", "r", "#", ...) or a member a_i of the
// indexed family used by the arithmetic frames.
class Symbol {
 public:
  static Symbol plain(std::string name);
  static Symbol indexed(BigInt index);

  static Symbol neg() { return plain("n"); }
  static Symbol rep() { return plain("r"); }
  static Symbol sharp() { return plain("#"); }

  bool is_plain() const noexcept { return std::holds_alternative<std::string>(value_); }
  bool is_indexed() const noexcept { return !is_plain(); }

  const std::string& name() const;  // plain only
  const BigInt& index() const;      // indexed only

  // DSL rendering: the token itself, or a{<decimal>}.
  std::string to_dsl() const;

  bool operator==(const Symbol& other) const { return value_ == other.value_; }
  std::strong_ordering operator<=>(const Symbol& other) const;

 private:
  explicit Symbol(std::variant<std::string, BigInt> v) : value_(std::move(v)) {}
  std::variant<std::string, BigInt> value_;
};

class Alphabet {
 public:
  Alphabet() = default;
  Alphabet(std::vector<Symbol> finite, bool indexed_family = false);
  Alphabet(std::initializer_list<Symbol> finite) : Alphabet(std::vector<Symbol>(finite)) {}

  static Alphabet of_tokens(std::initializer_list<std::string_view> tokens);

  const std::vector<Symbol>& finite_symbols() const noexcept { return symbols_; }
  bool has_indexed_family() const noexcept { return indexed_family_; }
  bool is_finite() const noexcept { return !indexed_family_; }
  std::size_t size() const noexcept { return symbols_.size(); }

  bool contains(const Symbol& s) const;
  // Position among the finite symbols (declaration order).
  std::optional<std::size_t> index_of(const Symbol& s) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Symbol> symbols_;
  bool indexed_family_ = false;
};

// A finite string over some alphabet; the empty string is epsilon.
class SmStr {
 public:
  SmStr() = default;
  explicit SmStr(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  SmStr(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  static SmStr repeat(const SmStr& x, std::size_t times);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const Symbol& front() const { return symbols_.front(); }
  const Symbol& back() const { return symbols_.back(); }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  SmStr substr(std::size_t pos, std::size_t len = std::string::npos) const;
  bool starts_with(const SmStr& prefix) const;
  std::size_t count(const Symbol& s) const;

  SmStr& operator+=(const SmStr& other);
  SmStr& operator+=(const Symbol& s);
  friend SmStr operator+(SmStr a, const SmStr& b) { return a += b; }
  friend SmStr operator+(const Symbol& s, const SmStr& b);

  // Symbols rendered back to back; epsilon renders as the empty string.
  std::string to_dsl() const;
  // Like to_dsl but epsilon renders as "eps".
  std::string display() const;

  bool operator==(const SmStr&) const = default;
  std::strong_ordering operator<=>(const SmStr& other) const;

 private:
  std::vector<Symbol> symbols_;
};

// Length-then-lexicographic comparison, symbols ordered by their position in
// the alphabet's declaration order (unknown symbols order after known ones).
bool length_lex_less(const SmStr& a, const SmStr& b, const Alphabet& alphabet);

// Scans one symbol token starting at text[pos]: a{<decimal>} or a single
// UTF-8 code point. U+266F (the sharp sign) is read as "#". Whitespace is not
// skipped. Throws SyntaxError on malformed input.
Symbol scan_symbol(std::string_view text, std::size_t& pos);

// Parses a whitespace-insensitive run of symbols, e.g. "r#r#" or "n a{12}".
// Every symbol must belong to the alphabet (UnknownSymbol otherwise). The
// empty text parses to epsilon.
SmStr parse_smstr(std::string_view text, const Alphabet& alphabet);
// Same, without alphabet membership checks.
SmStr parse_smstr(std::string_view text);

}  // namespace smullyan
