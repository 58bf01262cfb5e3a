#include "smullyan/arith/frame.hpp"

#include "smullyan/arith/codec.hpp"
#include "smullyan/error.hpp"

namespace smullyan::arith {

std::string frame_name(Frame fr) { return fr == Frame::Fr ? "r" : "nr"; }

Frame parse_frame(std::string_view text) {
  if (text == "r" || text == "Fr") return Frame::Fr;
  if (text == "nr" || text == "Fnr") return Frame::Fnr;
  throw Error(Errc::BadInput, "unknown frame '" + std::string(text) + "'");
}

Alphabet frame_alphabet(Frame fr) {
  if (fr == Frame::Fr) return Alphabet({Symbol::rep()}, true);
  return Alphabet({Symbol::neg(), Symbol::rep()}, true);
}

void check_frame_symbols(Frame fr, const SmStr& x) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Symbol& s = x[k];
    if (s.is_indexed()) {
      if (!is_v_formula(s.index()))
        throw Error(Errc::UnknownSymbol, s.to_dsl() + " is not the code of a v-formula");
      continue;
    }
    if (s == Symbol::rep() || (fr == Frame::Fnr && s == Symbol::neg())) continue;
    throw Error(Errc::UnknownSymbol, "'" + s.to_dsl() + "' is not a symbol of the " + frame_name(fr) + " frame");
  }
}

bool frame_is_predicate(Frame fr, const SmStr& x) {
  check_frame_symbols(fr, x);
  if (x.empty() || !x[x.size() - 1].is_indexed()) return false;
  for (std::size_t k = 0; k + 1 < x.size(); ++k)
    if (x[k].is_indexed()) return false;
  return true;
}

std::optional<SentenceParts> frame_decompose(Frame fr, const SmStr& s) {
  check_frame_symbols(fr, s);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k].is_indexed()) return SentenceParts{s.substr(0, k + 1), s.substr(k + 1)};
  return std::nullopt;
}

SentenceClass frame_sentence_class(Frame fr, const SmStr& s) {
  auto parts = frame_decompose(fr, s);
  if (!parts) return SentenceClass::NotSentence;
  return parts->tail.empty() ? SentenceClass::PredOnly : SentenceClass::SentPlus;
}

Formula index_formula(const Symbol& a) {
  auto f = decode_formula(a.index());
  if (!f) throw Error(Errc::UnknownSymbol, a.to_dsl() + " is not the code of a formula");
  return *f;
}

Formula predicate_formula(Frame fr, const SmStr& h) {
  if (!frame_is_predicate(fr, h)) throw Error(Errc::NotAPredicate, "'" + h.display() + "' is not a predicate");
  Formula phi = index_formula(h[h.size() - 1]);
  const std::size_t end = h.size() - 1;
  std::size_t pos = 0, k = 0, l = 0;
  while (pos < end && h[pos] == Symbol::neg()) ++pos, ++k;
  if (pos == end) return negate_n(phi, k);
  ++pos;  // the first r
  while (pos < end && h[pos] == Symbol::neg()) ++pos, ++l;
  if (pos == end) return negate_n(replace_free(phi, kV, Term::d(Term::var(kV))), k + l);
  return negate_n(Formula::bot(), k + l);
}

Formula sentence_formula(Frame fr, const SmStr& s) {
  auto parts = frame_decompose(fr, s);
  if (!parts) throw Error(Errc::NotASentence, "'" + s.display() + "' has no predicate prefix");
  const SmStr& h = parts->head;
  const SmStr& x = parts->tail;
  if (frame_is_predicate(fr, x))
    return subst(predicate_formula(fr, h), kV, Term::num(encode(predicate_formula(fr, x))));
  const Symbol& first = h[0];
  if (first.is_indexed()) {
    Formula phi = index_formula(first);
    bool x_is_sentence = frame_decompose(fr, x).has_value();
    return subst(phi, kV, Term::num(x_is_sentence ? encode(sentence_formula(fr, x)) : BigInt(0)));
  }
  if (first == Symbol::rep()) return Formula::bot();
  return Formula::neg(sentence_formula(fr, s.substr(1)));
}

}  // namespace smullyan::arith
