#pragma once

#include <optional>

#include "smullyan/arith/ast.hpp"
#include "smullyan/model.hpp"

namespace smullyan::arith {

// Fr: predicates r^j a_i. Fnr: predicates X a_i with X over {n, r}.
// In both, a_i is a symbol only when i codes a v-formula.
enum class Frame { Fr, Fnr };

std::string frame_name(Frame fr);
Frame parse_frame(std::string_view text);
Alphabet frame_alphabet(Frame fr);

// Throws UnknownSymbol for symbols outside the frame's alphabet.
void check_frame_symbols(Frame fr, const SmStr& x);
bool frame_is_predicate(Frame fr, const SmStr& x);
std::optional<SentenceParts> frame_decompose(Frame fr, const SmStr& s);
SentenceClass frame_sentence_class(Frame fr, const SmStr& s);

// The v-formula assigned to a predicate. Throws NotAPredicate.
Formula predicate_formula(Frame fr, const SmStr& h);
// The closed formula assigned to a sentence. Throws NotASentence.
Formula sentence_formula(Frame fr, const SmStr& s);

// phi_i itself for an index symbol a_i.
Formula index_formula(const Symbol& a);

}  // namespace smullyan::arith
