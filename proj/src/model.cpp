#include "smullyan/model.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "smullyan/error.hpp"

namespace smullyan {

std::string closure_name(Closure c) {
  switch (c) {
    case Closure::None: return "none";
    case Closure::N: return "n";
    case Closure::R: return "r";
    case Closure::NR: return "nr";
  }
  return "none";
}

Closure parse_closure(std::string_view text) {
  if (text == "none") return Closure::None;
  if (text == "n") return Closure::N;
  if (text == "r") return Closure::R;
  if (text == "nr" || text == "rn") return Closure::NR;
  throw Error(Errc::BadInput, "unknown closure mode '" + std::string(text) + "'");
}

std::string sentence_class_name(SentenceClass c) {
  switch (c) {
    case SentenceClass::NotSentence: return "not-sentence";
    case SentenceClass::PredOnly: return "pred-only";
    case SentenceClass::SentPlus: return "sent-plus";
  }
  return "not-sentence";
}

ModelSpec spec_from_json(const nlohmann::json& j, std::string name) {
  try {
    ModelSpec spec;
    spec.name = j.contains("name") ? j.at("name").get<std::string>() : std::move(name);
    std::vector<Symbol> syms;
    for (const auto& tok : j.at("alphabet")) {
      auto text = tok.get<std::string>();
      std::size_t pos = 0;
      syms.push_back(scan_symbol(text, pos));
      if (pos != text.size()) throw Error(Errc::SyntaxError, "alphabet token is not a single symbol: " + text);
    }
    spec.alphabet = Alphabet(std::move(syms));
    spec.closure = parse_closure(j.value("closure", std::string("none")));
    spec.simple = j.value("simple", false);
    for (const auto& b : j.at("base")) {
      spec.base.push_back(BasePred{parse_smstr(b.at("pred").get<std::string>(), spec.alphabet),
                                   parse_setexpr(b.at("phi").get<std::string>(), spec.alphabet)});
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadInput, std::string("malformed model spec: ") + e.what());
  }
}

nlohmann::json spec_to_json(const ModelSpec& spec) {
  nlohmann::json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["alphabet"] = nlohmann::json::array();
  for (const auto& s : spec.alphabet.finite_symbols()) j["alphabet"].push_back(s.to_dsl());
  j["closure"] = closure_name(spec.closure);
  j["simple"] = spec.simple;
  j["base"] = nlohmann::json::array();
  for (const auto& b : spec.base) j["base"].push_back({{"pred", b.pred.to_dsl()}, {"phi", b.phi.to_dsl()}});
  return j;
}

std::optional<SentenceParts> SmullyanModel::decompose(const SmStr& s) const {
  for (std::size_t k = 1; k <= s.size(); ++k) {
    SmStr head = s.substr(0, k);
    if (is_predicate(head)) return SentenceParts{std::move(head), s.substr(k)};
  }
  return std::nullopt;
}

bool holds(const SmullyanModel& m, const SmStr& s) {
  auto parts = m.decompose(s);
  if (!parts) throw Error(Errc::NotASentence, "'" + s.display() + "' has no predicate prefix");
  return m.phi_contains(parts->head, parts->tail);
}

SentenceClass sentence_class(const SmullyanModel& m, const SmStr& s) {
  auto parts = m.decompose(s);
  if (!parts) return SentenceClass::NotSentence;
  return parts->tail.empty() ? SentenceClass::PredOnly : SentenceClass::SentPlus;
}

FixedPointCert fixed_point(const SmullyanModel& m, const SmStr& h) {
  if (!has_r(m.closure())) throw Error(Errc::NoRClosure, "model '" + m.name() + "' is not r-closed");
  if (!m.is_predicate(h)) throw Error(Errc::NotAPredicate, "'" + h.display() + "' is not a predicate");
  FixedPointCert cert;
  SmStr rh = Symbol::rep() + h;
  cert.sentence = rh + rh;
  cert.holds_sentence = holds(m, cert.sentence);
  cert.holds_prefixed = holds(m, h + cert.sentence);
  if (cert.holds_sentence != cert.holds_prefixed)
    throw Error(Errc::CertFailure, "fixed point certificate failed for '" + h.display() + "'");
  return cert;
}

DiagonalWitness diag_witness(const SmullyanModel& m, const SmStr& h) {
  if (m.closure() != Closure::NR) throw Error(Errc::NoNRClosure, "model '" + m.name() + "' is not nr-closed");
  if (!m.is_predicate(h)) throw Error(Errc::NotAPredicate, "'" + h.display() + "' is not a predicate");
  DiagonalWitness w;
  SmStr rnh = Symbol::rep() + (Symbol::neg() + h);
  w.sentence = rnh + rnh;
  w.holds_sentence = holds(m, w.sentence);
  w.in_phi = m.phi_contains(h, w.sentence);
  w.discriminates = w.holds_sentence != w.in_phi;
  return w;
}

Model Model::build(ModelSpec spec) {
  const auto& alpha = spec.alphabet;
  if (has_n(spec.closure) && !alpha.contains(Symbol::neg()))
    throw Error(Errc::ClosureSymbolMissing, "closure mode needs 'n' in the alphabet");
  if (has_r(spec.closure) && !alpha.contains(Symbol::rep()))
    throw Error(Errc::ClosureSymbolMissing, "closure mode needs 'r' in the alphabet");
  if (spec.base.empty()) throw Error(Errc::BadBasePredicate, "a model needs at least one base predicate");

  auto closure_sym = [&](const Symbol& s) {
    return (has_n(spec.closure) && s == Symbol::neg()) || (has_r(spec.closure) && s == Symbol::rep());
  };
  for (const auto& b : spec.base) {
    if (b.pred.empty()) throw Error(Errc::BadBasePredicate, "empty base predicate");
    for (const auto& s : b.pred)
      if (!alpha.contains(s))
        throw Error(Errc::UnknownSymbol, "symbol '" + s.to_dsl() + "' of base predicate is not in the alphabet");
    if (closure_sym(b.pred.front()))
      throw Error(Errc::BadBasePredicate, "base predicate '" + b.pred.to_dsl() + "' begins with a closure symbol");
  }
  for (std::size_t i = 0; i < spec.base.size(); ++i)
    for (std::size_t j = 0; j < spec.base.size(); ++j) {
      if (i == j) continue;
      const auto& a = spec.base[i].pred;
      const auto& b = spec.base[j].pred;
      if (b.starts_with(a) && (a.size() < b.size() || i < j))
        throw Error(Errc::DaggerViolation, "'" + a.to_dsl() + "' and '" + b.to_dsl() + "' are prefix-comparable");
    }
  if (spec.simple) {
    bool ok = spec.base.size() == 1 && spec.base[0].pred == SmStr{Symbol::sharp()};
    for (const auto& s : alpha.finite_symbols())
      if (s != Symbol::sharp() && !closure_sym(s)) ok = false;
    if (!ok)
      throw Error(Errc::BadBasePredicate,
                  "simple models are supported when the base is '#' and every other symbol is an enabled closure "
                  "symbol");
  }

  std::vector<LangAcceptor> acceptors;
  acceptors.reserve(spec.base.size());
  for (const auto& b : spec.base) acceptors.push_back(compile(b.phi, alpha));
  return Model(std::move(spec), std::move(acceptors));
}

bool Model::is_closure_symbol(const Symbol& s) const {
  return (has_n(spec_.closure) && s == Symbol::neg()) || (has_r(spec_.closure) && s == Symbol::rep());
}

std::optional<std::size_t> Model::base_index(const SmStr& h) const {
  std::size_t k = 0;
  while (k < h.size() && is_closure_symbol(h[k])) ++k;
  if (k == h.size()) return std::nullopt;
  for (std::size_t i = 0; i < spec_.base.size(); ++i) {
    const auto& b = spec_.base[i].pred;
    if (h.size() - k != b.size()) continue;
    if (std::equal(b.begin(), b.end(), h.begin() + static_cast<std::ptrdiff_t>(k))) return i;
  }
  return std::nullopt;
}

bool Model::is_predicate(const SmStr& x) const {
  for (const auto& s : x)
    if (!spec_.alphabet.contains(s))
      throw Error(Errc::UnknownSymbol, "symbol '" + s.to_dsl() + "' is not in the alphabet");
  return base_index(x).has_value();
}

bool Model::phi_contains(const SmStr& h, const SmStr& x) const {
  auto base = base_index(h);
  if (!base) throw Error(Errc::NotAPredicate, "'" + h.display() + "' is not a predicate");
  // Peel closure symbols left to right. After one r the argument is a
  // doubled predicate, which (†) keeps from being a predicate, so a second r
  // answers immediately and the argument never grows past 2|x|.
  bool negate = false;
  SmStr arg = x;
  for (std::size_t k = 0; k < h.size() && is_closure_symbol(h[k]); ++k) {
    if (h[k] == Symbol::neg()) {
      negate = !negate;
    } else {
      if (!is_predicate(arg)) return negate;
      arg = arg + arg;
    }
  }
  return negate != acceptors_[*base].accepts(arg);
}

std::optional<SentenceParts> Model::decompose(const SmStr& s) const {
  for (const auto& sym : s)
    if (!spec_.alphabet.contains(sym)) return std::nullopt;
  std::size_t k = 0;
  while (k < s.size() && is_closure_symbol(s[k])) ++k;
  SmStr rest = s.substr(k);
  for (const auto& b : spec_.base)
    if (rest.starts_with(b.pred)) return SentenceParts{s.substr(0, k + b.pred.size()), s.substr(k + b.pred.size())};
  return std::nullopt;
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::BadInput, "'" + path + "' is not valid JSON: " + e.what());
  }
  return Model::build(spec_from_json(j, std::filesystem::path(path).stem().string()));
}

}  // namespace smullyan
