#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "smullyan/acceptor.hpp"
#include "smullyan/setexpr.hpp"
#include "smullyan/symbol.hpp"

namespace smullyan {

enum class Closure { None, N, R, NR };

inline bool has_n(Closure c) { return c == Closure::N || c == Closure::NR; }
inline bool has_r(Closure c) { return c == Closure::R || c == Closure::NR; }
std::string closure_name(Closure c);
Closure parse_closure(std::string_view text);

struct BasePred {
  SmStr pred;
  SetExpr phi;
};

struct ModelSpec {
  std::string name;
  Alphabet alphabet;
  Closure closure = Closure::None;
  std::vector<BasePred> base;
  // Predicates are exactly the strings X# with X free of '#'.
  bool simple = false;
};

// { "alphabet": [...], "closure": "none"|"n"|"r"|"nr", "simple": bool,
//   "base": [ {"pred": "...", "phi": "<descriptor>"} ] }
ModelSpec spec_from_json(const nlohmann::json& j, std::string name = {});
nlohmann::json spec_to_json(const ModelSpec& spec);

struct SentenceParts {
  SmStr head;
  SmStr tail;
};

enum class SentenceClass { NotSentence, PredOnly, SentPlus };
std::string sentence_class_name(SentenceClass c);

// What the property checkers and the fixed-point constructions need from a
// model. Implemented by regular-base models and by the arithmetic models.
class SmullyanModel {
 public:
  virtual ~SmullyanModel() = default;

  virtual const std::string& name() const = 0;
  virtual Closure closure() const = 0;
  virtual const Alphabet& alphabet() const = 0;
  // Symbols used when strings are enumerated for bounded checks.
  virtual std::vector<Symbol> enumeration_symbols() const = 0;

  virtual bool is_predicate(const SmStr& x) const = 0;
  // Throws NotAPredicate when h is not a predicate.
  virtual bool phi_contains(const SmStr& h, const SmStr& x) const = 0;

  // The unique predicate prefix of s, if any.
  virtual std::optional<SentenceParts> decompose(const SmStr& s) const;
};

// M |= s. Throws NotASentence.
bool holds(const SmullyanModel& m, const SmStr& s);
SentenceClass sentence_class(const SmullyanModel& m, const SmStr& s);

struct FixedPointCert {
  SmStr sentence;
  bool holds_sentence = false;
  bool holds_prefixed = false;  // M |= h ++ sentence
};

// r h r h, checked. Throws NoRClosure, NotAPredicate, CertFailure.
FixedPointCert fixed_point(const SmullyanModel& m, const SmStr& h);

struct DiagonalWitness {
  SmStr sentence;
  bool holds_sentence = false;
  bool in_phi = false;  // sentence in Phi(h)
  bool discriminates = false;
};

// The fixed point of n h, i.e. r n h r n h. Throws NoNRClosure.
DiagonalWitness diag_witness(const SmullyanModel& m, const SmStr& h);

class Model final : public SmullyanModel {
 public:
  // Throws DaggerViolation, ClosureSymbolMissing, BadBasePredicate.
  static Model build(ModelSpec spec);

  const ModelSpec& spec() const noexcept { return spec_; }
  const std::string& name() const override { return spec_.name; }
  Closure closure() const override { return spec_.closure; }
  const Alphabet& alphabet() const override { return spec_.alphabet; }
  std::vector<Symbol> enumeration_symbols() const override { return spec_.alphabet.finite_symbols(); }

  bool is_predicate(const SmStr& x) const override;
  bool phi_contains(const SmStr& h, const SmStr& x) const override;
  std::optional<SentenceParts> decompose(const SmStr& s) const override;

  // The base predicate that h reduces to after stripping closure symbols.
  std::optional<std::size_t> base_index(const SmStr& h) const;
  const LangAcceptor& base_acceptor(std::size_t i) const { return acceptors_.at(i); }

 private:
  Model(ModelSpec spec, std::vector<LangAcceptor> acceptors)
      : spec_(std::move(spec)), acceptors_(std::move(acceptors)) {}

  bool is_closure_symbol(const Symbol& s) const;

  ModelSpec spec_;
  std::vector<LangAcceptor> acceptors_;
};

Model load_model_file(const std::string& path);

}  // namespace smullyan
