#include "smullyan/symbol.hpp"

#include <algorithm>
#include <cctype>

#include "smullyan/error.hpp"

namespace smullyan {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::InfiniteAlphabet: return "InfiniteAlphabet";
    case Errc::DaggerViolation: return "DaggerViolation";
    case Errc::ClosureSymbolMissing: return "ClosureSymbolMissing";
    case Errc::BadBasePredicate: return "BadBasePredicate";
    case Errc::NotAPredicate: return "NotAPredicate";
    case Errc::NotASentence: return "NotASentence";
    case Errc::NoRClosure: return "NoRClosure";
    case Errc::NoNRClosure: return "NoNRClosure";
    case Errc::CertFailure: return "CertFailure";
    case Errc::PropertyNotApplicable: return "PropertyNotApplicable";
    case Errc::BudgetZero: return "BudgetZero";
    case Errc::NotUnary: return "NotUnary";
    case Errc::NotNFree: return "NotNFree";
    case Errc::UnknownEntry: return "UnknownEntry";
    case Errc::OpenTerm: return "OpenTerm";
    case Errc::NotClosed: return "NotClosed";
    case Errc::UnboundedQuantifier: return "UnboundedQuantifier";
    case Errc::OpenDArgument: return "OpenDArgument";
    case Errc::EvaluationBudgetExceeded: return "EvaluationBudgetExceeded";
    case Errc::NotEvaluable: return "NotEvaluable";
    case Errc::UnsoundTheory: return "UnsoundTheory";
    case Errc::OracleContractViolation: return "OracleContractViolation";
    case Errc::BadInput: return "BadInput";
  }
  return "Error";
}

Symbol Symbol::plain(std::string name) {
  if (name.empty()) throw Error(Errc::SyntaxError, "empty symbol name");
  return Symbol(std::move(name));
}

Symbol Symbol::indexed(BigInt index) {
  if (index < 0) throw Error(Errc::SyntaxError, "negative symbol index");
  return Symbol(std::move(index));
}

const std::string& Symbol::name() const { return std::get<std::string>(value_); }
const BigInt& Symbol::index() const { return std::get<BigInt>(value_); }

std::string Symbol::to_dsl() const {
  if (is_plain()) return name();
  return "a{" + index().str() + "}";
}

std::strong_ordering Symbol::operator<=>(const Symbol& other) const {
  if (value_.index() != other.value_.index()) return value_.index() <=> other.value_.index();
  if (is_plain()) return name() <=> other.name();
  const auto& a = index();
  const auto& b = other.index();
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Alphabet::Alphabet(std::vector<Symbol> finite, bool indexed_family)
    : symbols_(std::move(finite)), indexed_family_(indexed_family) {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    for (std::size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j])
        throw Error(Errc::BadInput, "duplicate alphabet symbol " + symbols_[i].to_dsl());
}

Alphabet Alphabet::of_tokens(std::initializer_list<std::string_view> tokens) {
  std::vector<Symbol> syms;
  for (auto t : tokens) {
    std::size_t pos = 0;
    syms.push_back(scan_symbol(t, pos));
    if (pos != t.size()) throw Error(Errc::SyntaxError, "alphabet token is not a single symbol: " + std::string(t));
  }
  return Alphabet(std::move(syms));
}

bool Alphabet::contains(const Symbol& s) const {
  if (indexed_family_ && s.is_indexed()) return true;
  return index_of(s).has_value();
}

std::optional<std::size_t> Alphabet::index_of(const Symbol& s) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), s);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - symbols_.begin());
}

SmStr SmStr::repeat(const SmStr& x, std::size_t times) {
  SmStr out;
  out.symbols_.reserve(x.size() * times);
  for (std::size_t i = 0; i < times; ++i) out += x;
  return out;
}

SmStr SmStr::substr(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, size());
  len = std::min(len, size() - pos);
  return SmStr(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                   symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

bool SmStr::starts_with(const SmStr& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.begin(), prefix.end(), begin());
}

std::size_t SmStr::count(const Symbol& s) const {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), s));
}

SmStr& SmStr::operator+=(const SmStr& other) {
  symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
  return *this;
}

SmStr& SmStr::operator+=(const Symbol& s) {
  symbols_.push_back(s);
  return *this;
}

SmStr operator+(const Symbol& s, const SmStr& b) {
  SmStr out{s};
  out += b;
  return out;
}

std::string SmStr::to_dsl() const {
  std::string out;
  for (const auto& s : symbols_) out += s.to_dsl();
  return out;
}

std::string SmStr::display() const { return empty() ? "eps" : to_dsl(); }

std::strong_ordering SmStr::operator<=>(const SmStr& other) const {
  return std::lexicographical_compare_three_way(begin(), end(), other.begin(), other.end());
}

bool length_lex_less(const SmStr& a, const SmStr& b, const Alphabet& alphabet) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    auto ia = alphabet.index_of(a[i]);
    auto ib = alphabet.index_of(b[i]);
    if (ia && ib) return *ia < *ib;
    if (ia) return true;
    if (ib) return false;
    return a[i] < b[i];
  }
  return false;
}

namespace {

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 0;
}

}  // namespace

Symbol scan_symbol(std::string_view text, std::size_t& pos) {
  if (pos >= text.size()) throw Error(Errc::SyntaxError, "expected a symbol at position " + std::to_string(pos));
  if (text[pos] == 'a' && pos + 1 < text.size() && text[pos + 1] == '{') {
    std::size_t p = pos + 2;
    std::size_t digits_begin = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (p == digits_begin || p >= text.size() || text[p] != '}')
      throw Error(Errc::SyntaxError, "malformed indexed symbol at position " + std::to_string(pos));
    BigInt index(std::string(text.substr(digits_begin, p - digits_begin)));
    pos = p + 1;
    return Symbol::indexed(std::move(index));
  }
  auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t len = utf8_length(lead);
  if (len == 0 || pos + len > text.size())
    throw Error(Errc::SyntaxError, "invalid UTF-8 at position " + std::to_string(pos));
  if (len == 1 && (std::isspace(lead) || !std::isprint(lead)))
    throw Error(Errc::SyntaxError, "expected a visible symbol at position " + std::to_string(pos));
  std::string token(text.substr(pos, len));
  pos += len;
  if (token == "♯") token = "#";
  return Symbol::plain(std::move(token));
}

namespace {

SmStr parse_smstr_impl(std::string_view text, const Alphabet* alphabet) {
  std::vector<Symbol> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    Symbol s = scan_symbol(text, pos);
    if (alphabet && !alphabet->contains(s))
      throw Error(Errc::UnknownSymbol,
                  "symbol '" + s.to_dsl() + "' at position " + std::to_string(start) + " is not in the alphabet");
    out.push_back(std::move(s));
  }
  return SmStr(std::move(out));
}

}  // namespace

SmStr parse_smstr(std::string_view text, const Alphabet& alphabet) { return parse_smstr_impl(text, &alphabet); }
SmStr parse_smstr(std::string_view text) { return parse_smstr_impl(text, nullptr); }

}  // namespace smullyan
