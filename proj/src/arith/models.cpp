#include "smullyan/arith/models.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "smullyan/arith/codec.hpp"
#include "smullyan/arith/eval.hpp"
#include "smullyan/error.hpp"

namespace smullyan::detail {
struct EmbeddedFile {
  const char* name;
  const char* text;
};
extern const EmbeddedFile kGalleryFiles[];
extern const std::size_t kGalleryFileCount;
}  // namespace smullyan::detail

namespace smullyan::arith {

using nlohmann::json;

// ---- universe ----

bool probe_evaluable(const Formula& phi) {
  std::vector<BigInt> args{0, 1, 2, 7, 272, encode(phi), BigInt("10000000000000000000000000000000000000003")};
  try {
    for (const auto& a : args) eval(subst(phi, kV, Term::num(a)));
  } catch (const Error& e) {
    if (e.code() == Errc::EvaluationBudgetExceeded) return false;
    throw;
  }
  return true;
}

const UniverseEntry& IndexUniverse::add(std::string name, const Formula& f) {
  for (VarId x : free_vars(f))
    if (x != kV) throw Error(Errc::BadInput, "'" + name + "' has free variable " + var_name(x) + "; expected a v-formula");
  UniverseEntry e{std::move(name), f, encode(f), probe_evaluable(f)};
  if (e.name.empty()) e.name = "phi" + std::to_string(entries_.size());
  if (find(e.index)) throw Error(Errc::BadInput, "formula registered twice: " + to_sexpr(f));
  entries_.push_back(std::move(e));
  return entries_.back();
}

const UniverseEntry* IndexUniverse::find(const BigInt& index) const {
  for (const auto& e : entries_)
    if (e.index == index) return &e;
  return nullptr;
}

const UniverseEntry& IndexUniverse::by_name(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw Error(Errc::BadInput, "no universe entry named '" + name + "'");
}

std::vector<Symbol> IndexUniverse::symbols() const {
  std::vector<Symbol> out;
  for (const auto& e : entries_) out.push_back(Symbol::indexed(e.index));
  return out;
}

IndexUniverse IndexUniverse::first(std::size_t n) const {
  IndexUniverse u;
  u.entries_.assign(entries_.begin(), entries_.begin() + std::min(n, entries_.size()));
  return u;
}

IndexUniverse IndexUniverse::from_json(const json& j) {
  try {
    IndexUniverse u;
    const json& list = j.is_object() ? j.at("formulas") : j;
    for (const auto& item : list) {
      if (item.is_string()) u.add("", parse_formula(item.get<std::string>()));
      else u.add(item.value("name", std::string()), parse_formula(item.at("formula").get<std::string>()));
    }
    return u;
  } catch (const json::exception& e) {
    throw Error(Errc::BadInput, std::string("malformed universe: ") + e.what());
  }
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::BadInput, path + ": " + e.what());
  }
}

}  // namespace

IndexUniverse IndexUniverse::load(const std::string& path) { return from_json(read_json_file(path)); }

IndexUniverse IndexUniverse::builtin() {
  for (std::size_t i = 0; i < detail::kGalleryFileCount; ++i)
    if (std::string_view(detail::kGalleryFiles[i].name) == "universe/corpus.json")
      return from_json(json::parse(detail::kGalleryFiles[i].text));
  throw Error(Errc::BadInput, "bundled corpus missing");
}

json IndexUniverse::to_json() const {
  json out = json::array();
  for (const auto& e : entries_)
    out.push_back({{"name", e.name}, {"formula", to_sexpr(e.formula)}, {"index", e.index.str()}, {"evaluable", e.evaluable}});
  return out;
}

// ---- oracles ----

bool TrueInN::judge(const Formula& f) const {
  try {
    return eval(f);
  } catch (const Error& e) {
    if (e.code() == Errc::EvaluationBudgetExceeded) throw Error(Errc::NotEvaluable, e.what());
    throw;
  }
}

FiniteTheory::FiniteTheory(std::vector<Formula> members) : members_(std::move(members)) {
  for (const auto& m : members_) {
    if (!is_closed(m)) throw Error(Errc::BadInput, "theory member is not closed: " + to_sexpr(m));
    normal_codes_.push_back(encode(d_normalize(m)));
  }
  std::sort(normal_codes_.begin(), normal_codes_.end());
}

bool FiniteTheory::judge(const Formula& f) const {
  return std::binary_search(normal_codes_.begin(), normal_codes_.end(), encode(d_normalize(f)));
}

std::vector<Formula> theory_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::BadInput, "a theory is a JSON list of s-expression formulas");
  std::vector<Formula> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw Error(Errc::BadInput, "theory members are s-expression strings");
    out.push_back(parse_formula(item.get<std::string>()));
  }
  return out;
}

std::vector<Formula> load_theory(const std::string& path) { return theory_from_json(read_json_file(path)); }

std::shared_ptr<const DerivabilityOracle> make_oracle(const std::string& name, std::vector<Formula> theory) {
  if (name == "true-in-n") return std::make_shared<TrueInN>();
  if (name == "finite-theory") return std::make_shared<FiniteTheory>(std::move(theory));
  throw Error(Errc::BadInput, "unknown oracle '" + name + "' (expected true-in-n or finite-theory)");
}

// ---- models ----

ArithModel::ArithModel(Frame fr, std::shared_ptr<const DerivabilityOracle> oracle, IndexUniverse universe, std::string name)
    : frame_(fr), oracle_(std::move(oracle)), universe_(std::move(universe)), alphabet_(frame_alphabet(fr)), name_(std::move(name)) {}

ArithModel ArithModel::model_n(const IndexUniverse& universe) {
  for (const auto& e : universe.entries())
    if (!e.evaluable) throw Error(Errc::NotEvaluable, "'" + e.name + "' is not evaluable: " + to_sexpr(e.formula));
  return ArithModel(Frame::Fnr, std::make_shared<TrueInN>(), universe, "arith:n");
}

ArithModel ArithModel::model_t(std::shared_ptr<const DerivabilityOracle> oracle, const IndexUniverse& universe,
                               std::size_t sample_len) {
  ArithModel m(Frame::Fr, oracle, universe, "arith:t(" + oracle->name() + ")");
  ArithModel probe(Frame::Fr, oracle, universe.first(4), m.name_);
  for (const auto& s : sample_strings(probe, sample_len)) {
    if (!frame_decompose(Frame::Fr, s)) continue;
    Formula f = sentence_formula(Frame::Fr, s);
    if (oracle->judge(f) != oracle->judge(d_normalize(f)))
      throw Error(Errc::OracleContractViolation,
                  oracle->name() + " judges " + to_sexpr(f) + " and its d-normal form differently");
  }
  return m;
}

std::vector<Symbol> ArithModel::enumeration_symbols() const {
  std::vector<Symbol> out;
  if (frame_ == Frame::Fnr) out.push_back(Symbol::neg());
  out.push_back(Symbol::rep());
  for (auto& s : universe_.symbols()) out.push_back(std::move(s));
  return out;
}

bool ArithModel::judge(const Formula& f) const { return oracle_->judge(f); }

bool ArithModel::phi_contains(const SmStr& h, const SmStr& x) const {
  if (!is_predicate(h)) throw Error(Errc::NotAPredicate, "'" + h.display() + "' is not a predicate");
  return judge(sentence_formula(frame_, h + x));
}

std::vector<SmStr> sample_strings(const ArithModel& m, std::size_t max_len) {
  auto syms = m.enumeration_symbols();
  std::vector<SmStr> out;
  std::vector<SmStr> layer{SmStr{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<SmStr> next;
    for (const auto& x : layer)
      for (const auto& s : syms) next.push_back(x + SmStr{s});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

json LawReport::to_json() const { return {{"checked", checked}, {"ok", ok()}, {"failures", failures}}; }

LawReport closure_laws(const ArithModel& m, std::size_t pred_len, std::size_t str_len) {
  LawReport r;
  auto strings = sample_strings(m, str_len);
  strings.insert(strings.begin(), SmStr{});
  std::vector<SmStr> preds;
  for (const auto& h : sample_strings(m, pred_len))
    if (m.is_predicate(h)) preds.push_back(h);
  for (const auto& h : preds) {
    if (has_n(m.closure())) {
      SmStr nh = Symbol::neg() + h;
      for (const auto& x : strings) {
        ++r.checked;
        if (m.phi_contains(nh, x) == m.phi_contains(h, x))
          r.failures.push_back("complement law fails for H=" + h.to_dsl() + " X=" + x.to_dsl());
      }
    }
    SmStr rh = Symbol::rep() + h;
    for (const auto& x : strings) {
      ++r.checked;
      bool lhs = m.phi_contains(rh, x);
      bool rhs = m.is_predicate(x) && m.phi_contains(h, x + x);
      if (lhs != rhs) r.failures.push_back("repeat law fails for H=" + h.to_dsl() + " X=" + x.to_dsl());
    }
  }
  return r;
}

// ---- demonstrations ----

json DiagonalReport::to_json() const {
  return {{"construction", construction},
          {"index", index.str()},
          {"sentence", sentence.to_dsl()},
          {"theta", to_sexpr(theta)},
          {"code", code.str()},
          {"code_digits", code.str().size()},
          {"instance", to_sexpr(instance)},
          {"theta_value", theta_value},
          {"instance_value", instance_value},
          {"ok", ok}};
}

namespace {

SmStr doubled(std::initializer_list<Symbol> head, const BigInt& i) {
  SmStr h(head);
  h += Symbol::indexed(i);
  return h + h;
}

bool eval_or_not_evaluable(const Formula& f) { return TrueInN().judge(f); }

DiagonalReport diagonal(const std::string& construction, Frame fr, const SmStr& s, const BigInt& i,
                        const std::function<bool(const Formula&)>& judge) {
  DiagonalReport r;
  r.construction = construction;
  r.index = i;
  r.sentence = s;
  r.theta = sentence_formula(fr, s);
  r.code = encode(r.theta);
  r.instance = subst(index_formula(Symbol::indexed(i)), kV, Term::num(r.code));
  r.theta_value = judge(r.theta);
  r.instance_value = judge(r.instance);
  return r;
}

}  // namespace

DiagonalReport arith_fixed_point(const BigInt& i) {
  auto r = diagonal("fixed-point", Frame::Fnr, doubled({Symbol::rep()}, i), i, eval_or_not_evaluable);
  r.ok = r.theta_value == r.instance_value;
  return r;
}

DiagonalReport tarski_refuter(const BigInt& i) {
  auto r = diagonal("tarski-refuter", Frame::Fnr, doubled({Symbol::rep(), Symbol::neg()}, i), i, eval_or_not_evaluable);
  r.ok = r.theta_value != r.instance_value;
  return r;
}

DiagonalReport weak_fixed_point(const DerivabilityOracle& oracle, const BigInt& i) {
  auto r = diagonal("weak-fixed-point", Frame::Fr, doubled({Symbol::rep()}, i), i,
                    [&](const Formula& f) { return oracle.judge(f); });
  r.ok = r.theta_value == r.instance_value;
  return r;
}

Formula provability_formula(const std::vector<Formula>& theory) {
  std::optional<Formula> out;
  for (const auto& m : theory) {
    Formula eq = Formula::eq(Term::var(kV), Term::num(encode(d_normalize(m))));
    out = out ? Formula::disj(*out, eq) : eq;
  }
  return out ? *out : Formula::bot();
}

json G1Report::to_json() const {
  return {{"provability", to_sexpr(provability)},
          {"provability_index", provability_index.str()},
          {"sentence", sentence.to_dsl()},
          {"theta", to_sexpr(theta)},
          {"code", code.str()},
          {"theta_true", theta_true},
          {"theta_provable", theta_provable},
          {"negation_provable", negation_provable},
          {"ok", ok()}};
}

G1Report g1_demo(const std::vector<Formula>& theory) {
  for (const auto& m : theory) {
    if (!is_closed(m)) throw Error(Errc::BadInput, "theory member is not closed: " + to_sexpr(m));
    if (!eval_or_not_evaluable(m)) throw Error(Errc::UnsoundTheory, "theory member is false: " + to_sexpr(m));
  }
  FiniteTheory t(theory);
  G1Report r;
  r.provability = provability_formula(theory);
  r.provability_index = encode(r.provability);
  r.sentence = doubled({Symbol::rep(), Symbol::neg()}, r.provability_index);
  r.theta = sentence_formula(Frame::Fnr, r.sentence);
  r.code = encode(r.theta);
  r.theta_true = eval_or_not_evaluable(r.theta);
  r.theta_provable = t.judge(r.theta);
  r.negation_provable = t.judge(Formula::neg(r.theta));
  return r;
}

json TTReport::to_json() const {
  return {{"clause1", {{"status", clause1}, {"detail", clause1_detail}}},
          {"clause2", {{"status", clause2}, {"detail", clause2_detail}}}};
}

TTReport tt_checks(std::shared_ptr<const DerivabilityOracle> oracle, const IndexUniverse& universe, Budget budget,
                   std::optional<BigInt> provability_index) {
  if (budget.pred_len == 0 || budget.str_len == 0) throw Error(Errc::BudgetZero, "budget lengths must be positive");
  TTReport report;
  IndexUniverse window_universe = universe;
  if (provability_index && !universe.find(*provability_index)) {
    auto f = decode_formula(*provability_index);
    if (!f || !is_v_formula(*provability_index))
      throw Error(Errc::BadInput, "provability index is not the code of a v-formula");
    window_universe.add("provability", *f);
  }
  auto m = ArithModel::model_t(oracle, window_universe, 2);

  if (!provability_index) {
    report.clause1 = "not-requested";
  } else {
    const BigInt& ipr = *provability_index;
    Formula phi_pr = index_formula(Symbol::indexed(ipr));
    std::vector<SmStr> window;
    for (const auto& s : sample_strings(m, budget.str_len))
      if (frame_sentence_class(Frame::Fr, s) == SentenceClass::SentPlus) window.push_back(s);
    std::vector<Formula> samples;
    for (const auto& s : window) samples.push_back(sentence_formula(Frame::Fr, s));
    samples.push_back(sentence_formula(Frame::Fnr, doubled({Symbol::rep(), Symbol::neg()}, ipr)));
    std::optional<Formula> counterexample;
    for (const auto& psi : samples) {
      if (oracle->judge(psi) != oracle->judge(subst(phi_pr, kV, Term::num(encode(psi))))) {
        counterexample = psi;
        break;
      }
    }
    report.clause1_detail["law_samples"] = samples.size();
    if (counterexample) {
      report.clause1 = "law-unvalidated";
      report.clause1_detail["counterexample"] = to_sexpr(*counterexample);
      report.clause1_detail["explanation"] =
          "the candidate does not satisfy 'provable(psi) iff provable(phi(code of psi))' on this sample, so the "
          "equality of True+ and Phi(a_i) on Sent+ is not checked";
    } else {
      SmStr a_pr{Symbol::indexed(ipr)};
      json mismatches = json::array();
      for (const auto& s : window) {
        bool truth = m.judge(sentence_formula(Frame::Fr, s));
        bool named = m.phi_contains(a_pr, s);
        if (truth != named) mismatches.push_back(s.to_dsl());
      }
      report.clause1 = mismatches.empty() ? "holds" : "fails";
      report.clause1_detail["sentences"] = window.size();
      report.clause1_detail["mismatches"] = mismatches;
    }
  }

  const UniverseEntry* theorem = nullptr;
  for (const auto& e : universe.entries())
    if (is_closed(e.formula) && oracle->judge(e.formula)) {
      theorem = &e;
      break;
    }
  if (!theorem) {
    report.clause2 = "no-theorem";
    report.clause2_detail["explanation"] = "no closed universe formula is judged true by the oracle";
    return report;
  }
  SmStr a_t{Symbol::indexed(theorem->index)};
  SmStr ra_t = Symbol::rep() + a_t;
  bool true_a = m.judge(sentence_formula(Frame::Fr, a_t));
  bool true_ra = m.judge(sentence_formula(Frame::Fr, ra_t));
  report.clause2_detail["theorem"] = to_sexpr(theorem->formula);
  json rows = json::array();
  bool all = true;
  for (const auto& h : sample_strings(m, budget.pred_len)) {
    if (!m.is_predicate(h)) continue;
    bool in_a = m.phi_contains(h, a_t);
    bool in_ra = m.phi_contains(h, ra_t);
    std::optional<SmStr> sep;
    if (in_a != true_a) sep = a_t;
    else if (in_ra != true_ra) sep = ra_t;
    all = all && sep.has_value();
    rows.push_back({{"pred", h.to_dsl()}, {"separator", sep ? json(sep->to_dsl()) : json(nullptr)}});
  }
  report.clause2 = all ? "holds" : "fails";
  report.clause2_detail["predicates"] = rows;
  return report;
}

}  // namespace smullyan::arith
