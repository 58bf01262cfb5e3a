#include "smullyan/properties.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "smullyan/error.hpp"

namespace smullyan {

namespace {

struct PropInfo {
  PropertyId id;
  const char* name;
  const char* label;
};

constexpr PropInfo kProps[] = {
    {PropertyId::FPT, "fpt", "FPT"},
    {PropertyId::TTarski, "t-tarski", "TT"},
    {PropertyId::FTarski, "f-tarski", "FT"},
    {PropertyId::TTarskiPlus, "t-tarski-plus", "TT+"},
    {PropertyId::FTarskiPlus, "f-tarski-plus", "FT+"},
    {PropertyId::MG1, "mg1", "mG1"},
    {PropertyId::MG1Plus, "mg1-plus", "mG1+"},
    {PropertyId::G1, "g1", "G1"},
    {PropertyId::G1Plus, "g1-plus", "G1+"},
};

const PropInfo& info(PropertyId p) {
  for (const auto& i : kProps)
    if (i.id == p) return i;
  throw Error(Errc::BadInput, "unknown property");
}

bool is_plus(PropertyId p) {
  return p == PropertyId::TTarskiPlus || p == PropertyId::FTarskiPlus || p == PropertyId::MG1Plus ||
         p == PropertyId::G1Plus;
}

nlohmann::json budget_json(const Budget& b) { return {{"pred_len", b.pred_len}, {"str_len", b.str_len}}; }

Verdict base_verdict(const SmullyanModel& m, PropertyId p) {
  Verdict v;
  v.model = m.name();
  v.property = p;
  return v;
}

// Everything the bounded checks look at: all strings up to str_len with
// their sentence class and truth value, and the predicates up to pred_len.
struct Window {
  std::vector<SmStr> strings;
  std::vector<SentenceClass> cls;
  std::vector<bool> truth;
  std::vector<SmStr> preds;

  bool sentence(std::size_t i) const { return cls[i] != SentenceClass::NotSentence; }
  bool sent_plus(std::size_t i) const { return cls[i] == SentenceClass::SentPlus; }
  bool is_true(std::size_t i) const { return sentence(i) && truth[i]; }
  bool is_false(std::size_t i) const { return sentence(i) && !truth[i]; }
};

Window make_window(const SmullyanModel& m, const Budget& b) {
  Window w;
  Alphabet over(m.enumeration_symbols());
  w.strings = all_strings(over, b.str_len);
  w.cls.reserve(w.strings.size());
  w.truth.reserve(w.strings.size());
  for (const auto& x : w.strings) {
    auto parts = m.decompose(x);
    if (!parts) {
      w.cls.push_back(SentenceClass::NotSentence);
      w.truth.push_back(false);
      continue;
    }
    w.cls.push_back(parts->tail.empty() ? SentenceClass::PredOnly : SentenceClass::SentPlus);
    w.truth.push_back(m.phi_contains(parts->head, parts->tail));
  }
  for (const auto& x : all_strings(over, b.pred_len))
    if (m.is_predicate(x)) w.preds.push_back(x);
  return w;
}

std::vector<bool> phi_bits(const SmullyanModel& m, const SmStr& h, const Window& w) {
  std::vector<bool> bits(w.strings.size());
  for (std::size_t i = 0; i < w.strings.size(); ++i) bits[i] = m.phi_contains(h, w.strings[i]);
  return bits;
}

Verdict check_certified_r(const SmullyanModel& m, PropertyId p, const Budget& b) {
  Verdict v = base_verdict(m, p);
  v.grade = Grade::Certified;
  v.holds = true;
  v.bounds = b;
  v.detail["route"] = "fixed-point";
  auto rows = nlohmann::json::array();
  Alphabet over(m.enumeration_symbols());
  for (const auto& h : all_strings(over, b.pred_len)) {
    if (!m.is_predicate(h)) continue;
    auto cert = fixed_point(m, h);
    // For the Tarski variants the fixed point also separates Phi(h) from the
    // false sentences: it lies in Phi(h) exactly when it is true.
    if (p != PropertyId::FPT && m.phi_contains(h, cert.sentence) != cert.holds_sentence)
      throw Error(Errc::CertFailure, "fixed point does not separate Phi(" + h.display() + ") from False");
    rows.push_back({{"pred", h.to_dsl()}, {"sentence", cert.sentence.to_dsl()}, {"holds", cert.holds_sentence}});
  }
  v.detail["predicates"] = std::move(rows);
  return v;
}

Verdict check_certified_nr(const SmullyanModel& m, PropertyId p, const Budget& b) {
  Verdict v = base_verdict(m, p);
  v.grade = Grade::Certified;
  v.holds = true;
  v.bounds = b;
  v.detail["route"] = "diagonal";
  auto rows = nlohmann::json::array();
  Alphabet over(m.enumeration_symbols());
  for (const auto& h : all_strings(over, b.pred_len)) {
    if (!m.is_predicate(h)) continue;
    auto w = diag_witness(m, h);
    if (!w.discriminates) throw Error(Errc::CertFailure, "diagonal witness failed for '" + h.display() + "'");
    rows.push_back({{"pred", h.to_dsl()}, {"sentence", w.sentence.to_dsl()}, {"holds", w.holds_sentence}});
  }
  v.detail["predicates"] = std::move(rows);
  return v;
}

Verdict check_bounded(const SmullyanModel& m, PropertyId p, const Budget& b) {
  Window w = make_window(m, b);
  Verdict v = base_verdict(m, p);
  v.grade = Grade::Evidence;
  v.bounds = b;
  v.holds = true;
  v.detail["route"] = "bounded";
  auto rows = nlohmann::json::array();
  const bool plus = is_plus(p);
  const std::size_t n = w.strings.size();

  for (const auto& h : w.preds) {
    nlohmann::json row{{"pred", h.to_dsl()}};
    bool ok = true;
    if (p == PropertyId::FPT) {
      std::optional<std::size_t> found;
      for (std::size_t i = 0; i < n && !found; ++i)
        if (w.sent_plus(i) && w.truth[i] == holds(m, h + w.strings[i])) found = i;
      ok = found.has_value();
      row["status"] = ok ? "fixed-point" : "none-found";
      if (found) row["sentence"] = w.strings[*found].to_dsl();
    } else if (p == PropertyId::TTarski || p == PropertyId::FTarski || p == PropertyId::TTarskiPlus ||
               p == PropertyId::FTarskiPlus) {
      const bool want_true = p == PropertyId::TTarski || p == PropertyId::TTarskiPlus;
      auto bits = phi_bits(m, h, w);
      std::optional<std::size_t> diff;
      for (std::size_t i = 0; i < n && !diff; ++i) {
        if (plus && !w.sent_plus(i)) continue;
        bool target = want_true ? w.is_true(i) : w.is_false(i);
        if (bits[i] != target) diff = i;
      }
      ok = diff.has_value();
      row["status"] = ok ? "discriminated" : "names-up-to-bound";
      if (diff) row["separator"] = w.strings[*diff].to_dsl();
    } else {
      // mG1 family: test the premise on the window, then look for S.
      const bool g1 = p == PropertyId::G1 || p == PropertyId::G1Plus;
      auto bits = phi_bits(m, h, w);
      std::optional<std::size_t> premise_break;
      for (std::size_t i = 0; i < n && !premise_break; ++i) {
        if (!bits[i]) continue;
        bool bad = plus ? (w.sent_plus(i) && !w.truth[i]) : !w.is_true(i);
        if (bad) premise_break = i;
      }
      if (premise_break) {
        row["status"] = "vacuous";
        row["premise_counterexample"] = w.strings[*premise_break].to_dsl();
      } else {
        std::optional<std::size_t> found;
        for (std::size_t i = 0; i < n && !found; ++i) {
          if (plus ? !w.sent_plus(i) : !w.sentence(i)) continue;
          if (bits[i]) continue;
          bool good = g1 ? !m.phi_contains(h, Symbol::neg() + w.strings[i]) : w.truth[i];
          if (good) found = i;
        }
        ok = found.has_value();
        row["status"] = ok ? "witnessed" : "no-witness";
        row["premise"] = "checked-up-to-bound";
        if (found) row["sentence"] = w.strings[*found].to_dsl();
      }
    }
    rows.push_back(std::move(row));
    if (!ok && v.holds) {
      v.holds = false;
      v.witness = h;
    }
  }
  v.detail["predicates"] = std::move(rows);
  return v;
}

}  // namespace

std::string property_name(PropertyId p) { return info(p).name; }
std::string property_label(PropertyId p) { return info(p).label; }

PropertyId parse_property(std::string_view text) {
  for (const auto& i : kProps)
    if (text == i.name || text == i.label) return i.id;
  throw Error(Errc::BadInput, "unknown property '" + std::string(text) + "'");
}

const std::vector<PropertyId>& all_properties() {
  static const std::vector<PropertyId> all = [] {
    std::vector<PropertyId> out;
    for (const auto& i : kProps) out.push_back(i.id);
    return out;
  }();
  return all;
}

bool needs_n(PropertyId p) { return p == PropertyId::G1 || p == PropertyId::G1Plus; }

std::string grade_name(Grade g) {
  switch (g) {
    case Grade::Certified: return "certified";
    case Grade::Refuted: return "refuted";
    case Grade::Evidence: return "evidence";
  }
  return "evidence";
}

nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["model"] = v.model;
  j["property"] = property_name(v.property);
  j["grade"] = grade_name(v.grade);
  j["holds"] = v.holds;
  j["witness"] = v.witness ? nlohmann::json(v.witness->to_dsl()) : nlohmann::json(nullptr);
  j["bounds"] = v.bounds ? budget_json(*v.bounds) : nlohmann::json(nullptr);
  j["detail"] = v.detail;
  return j;
}

Verdict check(const SmullyanModel& m, PropertyId p, Budget budget) {
  if (budget.pred_len == 0 || budget.str_len == 0) throw Error(Errc::BudgetZero, "budget components must be >= 1");
  if (needs_n(p) && !has_n(m.closure()))
    throw Error(Errc::PropertyNotApplicable, property_name(p) + " is defined for n-closed models only");
  if (auto phi = unary_phi(m)) return decide_unary(*phi, p, m.name());
  if (has_r(m.closure()) &&
      (p == PropertyId::FPT || p == PropertyId::FTarski || p == PropertyId::FTarskiPlus))
    return check_certified_r(m, p, budget);
  if (m.closure() == Closure::NR && p != PropertyId::FPT && p != PropertyId::FTarski && p != PropertyId::FTarskiPlus)
    return check_certified_nr(m, p, budget);
  return check_bounded(m, p, budget);
}

EvPeriodicSet::EvPeriodicSet(std::vector<bool> prefix, std::vector<bool> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw Error(Errc::BadInput, "eventually periodic set needs a nonempty cycle");
  const std::size_t p = cycle_.size();
  for (std::size_t q = 1; q < p; ++q) {
    if (p % q != 0) continue;
    bool periodic = true;
    for (std::size_t i = q; i < p && periodic; ++i) periodic = cycle_[i] == cycle_[i - q];
    if (periodic) {
      cycle_.resize(q);
      break;
    }
  }
  // Pull the threshold down while the last prefix bit repeats the cycle.
  while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    prefix_.pop_back();
  }
}

bool EvPeriodicSet::contains(std::size_t k) const {
  if (k < prefix_.size()) return prefix_[k];
  return cycle_[(k - prefix_.size()) % cycle_.size()];
}

SetExpr EvPeriodicSet::to_setexpr() const {
  SmStr sharp{Symbol::sharp()};
  SetExpr e = SetExpr::empty();
  bool first = true;
  auto add = [&](SetExpr part) {
    e = first ? part : SetExpr::union_of(e, part);
    first = false;
  };
  for (std::size_t k = 0; k < prefix_.size(); ++k)
    if (prefix_[k]) add(SetExpr::lit(SmStr::repeat(sharp, k)));
  for (std::size_t j = 0; j < cycle_.size(); ++j)
    if (cycle_[j]) add(SetExpr::lin_pow(SetExpr::lit(sharp), cycle_.size(), prefix_.size() + j));
  return e;
}

nlohmann::json EvPeriodicSet::to_json() const {
  auto bits = [](const std::vector<bool>& v) {
    std::string s;
    for (bool b : v) s += b ? '1' : '0';
    return s;
  };
  return {{"threshold", threshold()}, {"period", period()}, {"prefix", bits(prefix_)}, {"cycle", bits(cycle_)}};
}

EvPeriodicSet to_ev_periodic(const LangAcceptor& a) {
  if (a.alphabet().size() != 1) throw Error(Errc::NotUnary, "exponent sets need a one-symbol alphabet");
  std::map<StateSet, std::size_t> seen;
  std::vector<bool> bits;
  StateSet cur = a.start();
  while (!seen.count(cur)) {
    seen.emplace(cur, bits.size());
    bits.push_back(a.accepting(cur));
    cur = a.step(cur, 0);
  }
  std::size_t t = seen.at(cur);
  return EvPeriodicSet(std::vector<bool>(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(t)),
                       std::vector<bool>(bits.begin() + static_cast<std::ptrdiff_t>(t), bits.end()));
}

std::optional<EvPeriodicSet> unary_phi(const SmullyanModel& m) {
  const auto* model = dynamic_cast<const Model*>(&m);
  if (!model) return std::nullopt;
  const auto& spec = model->spec();
  if (spec.closure != Closure::None || spec.alphabet.size() != 1 || spec.alphabet.has_indexed_family() ||
      spec.alphabet.finite_symbols()[0] != Symbol::sharp() || spec.base.size() != 1 ||
      spec.base[0].pred != SmStr{Symbol::sharp()})
    return std::nullopt;
  return to_ev_periodic(model->base_acceptor(0));
}

Verdict decide_unary(const EvPeriodicSet& phi, PropertyId p, std::string model_name) {
  if (needs_n(p)) throw Error(Errc::NotNFree, property_name(p) + " mentions n and has no unary reading");
  // Exponent k stands for #^k. Sentences are k >= 1 (predicate # plus tail
  // #^{k-1}); proper sentences are k >= 2. #^k is true iff k-1 is in phi.
  // Every sequence below is periodic from threshold + 1 on with the same
  // period, so one window of two periods past that decides each clause.
  const std::size_t window = phi.threshold() + 2 + 2 * phi.period();
  auto in_phi = [&](std::size_t k) { return phi.contains(k); };
  auto is_true = [&](std::size_t k) { return k >= 1 && phi.contains(k - 1); };
  auto is_false = [&](std::size_t k) { return k >= 1 && !phi.contains(k - 1); };

  Verdict v;
  v.model = std::move(model_name);
  v.property = p;
  v.detail["route"] = "unary-exact";
  v.detail["phi"] = phi.to_json();
  v.detail["window"] = window;
  std::optional<std::size_t> found;

  switch (p) {
    case PropertyId::FPT:
      for (std::size_t m = 1; m <= window && !found; ++m)
        if (in_phi(m) == in_phi(m + 1)) found = m;
      if (found) v.detail["fixed_point"] = SmStr::repeat(SmStr{Symbol::sharp()}, *found + 1).to_dsl();
      else v.detail["alternation"] = "phi(m) != phi(m+1) for every m >= 1";
      break;
    case PropertyId::TTarski:
    case PropertyId::FTarski:
    case PropertyId::TTarskiPlus:
    case PropertyId::FTarskiPlus: {
      const bool want_true = p == PropertyId::TTarski || p == PropertyId::TTarskiPlus;
      const std::size_t from = is_plus(p) ? 2 : 0;
      for (std::size_t k = from; k <= window && !found; ++k)
        if (in_phi(k) != (want_true ? is_true(k) : is_false(k))) found = k;
      if (found) v.detail["separator"] = SmStr::repeat(SmStr{Symbol::sharp()}, *found).to_dsl();
      break;
    }
    case PropertyId::MG1:
    case PropertyId::MG1Plus: {
      const std::size_t from = p == PropertyId::MG1Plus ? 2 : 0;
      std::optional<std::size_t> premise_break;
      for (std::size_t k = from; k <= window && !premise_break; ++k)
        if (in_phi(k) && !is_true(k)) premise_break = k;
      if (premise_break) {
        found = *premise_break;
        v.detail["premise_counterexample"] = SmStr::repeat(SmStr{Symbol::sharp()}, *premise_break).to_dsl();
      } else {
        for (std::size_t k = std::max<std::size_t>(from, 1); k <= window && !found; ++k)
          if (is_true(k) && !in_phi(k)) found = k;
        if (found) v.detail["sentence"] = SmStr::repeat(SmStr{Symbol::sharp()}, *found).to_dsl();
      }
      break;
    }
    default: break;
  }
  v.holds = found.has_value();
  v.grade = v.holds ? Grade::Certified : Grade::Refuted;
  if (!v.holds) v.witness = SmStr{Symbol::sharp()};
  return v;
}

std::size_t EquivalenceReport::count(EquivalenceRow::Status s) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const auto& r) { return r.status == s; }));
}

nlohmann::json EquivalenceReport::to_json() const {
  auto status = [](EquivalenceRow::Status s) {
    switch (s) {
      case EquivalenceRow::Status::Agree: return "agree";
      case EquivalenceRow::Status::Inconclusive: return "inconclusive";
      case EquivalenceRow::Status::Fail: return "fail";
    }
    return "fail";
  };
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"model", r.model},
                         {"left", property_name(r.left)},
                         {"right", property_name(r.right)},
                         {"left_holds", r.left_verdict.holds},
                         {"right_holds", r.right_verdict.holds},
                         {"left_grade", grade_name(r.left_verdict.grade)},
                         {"right_grade", grade_name(r.right_verdict.grade)},
                         {"status", status(r.status)}});
  j["agree"] = count(EquivalenceRow::Status::Agree);
  j["inconclusive"] = count(EquivalenceRow::Status::Inconclusive);
  j["fail"] = count(EquivalenceRow::Status::Fail);
  return j;
}

EquivalenceReport equivalence_suite(const std::vector<EquivalenceSubject>& subjects, Budget budget) {
  using P = PropertyId;
  const std::vector<std::pair<P, P>> always{{P::FPT, P::FTarskiPlus}, {P::TTarski, P::MG1}, {P::TTarskiPlus, P::MG1Plus}};
  const std::vector<std::pair<P, P>> with_n{{P::FTarskiPlus, P::TTarskiPlus}, {P::MG1, P::G1}, {P::MG1Plus, P::G1Plus}};
  EquivalenceReport report;
  for (const auto& subject : subjects) {
    std::map<P, Verdict> cache;
    std::string name;
    bool n_closed = false;
    std::function<Verdict(P)> get;
    if (const auto* mp = std::get_if<const SmullyanModel*>(&subject)) {
      const SmullyanModel& m = **mp;
      name = m.name();
      n_closed = has_n(m.closure());
      get = [&, mp](P p) { return check(**mp, p, budget); };
    } else {
      const auto& [label, phi] = std::get<std::pair<std::string, EvPeriodicSet>>(subject);
      name = label;
      get = [&phi, &label](P p) { return decide_unary(phi, p, label); };
    }
    auto verdict = [&](P p) -> const Verdict& {
      auto it = cache.find(p);
      if (it == cache.end()) it = cache.emplace(p, get(p)).first;
      return it->second;
    };
    auto run = [&](const std::vector<std::pair<P, P>>& pairs) {
      for (auto [l, r] : pairs) {
        EquivalenceRow row{name, l, r, verdict(l), verdict(r)};
        if (row.left_verdict.holds == row.right_verdict.holds) row.status = EquivalenceRow::Status::Agree;
        else if (row.left_verdict.exact() && row.right_verdict.exact()) row.status = EquivalenceRow::Status::Fail;
        else row.status = EquivalenceRow::Status::Inconclusive;
        report.rows.push_back(std::move(row));
      }
    };
    run(always);
    if (n_closed) run(with_n);
  }
  return report;
}

const std::vector<ImplicationRow>& implication_arrows() {
  using P = PropertyId;
  static const std::vector<ImplicationRow> arrows{
      {P::FPT, P::FTarskiPlus, false},   {P::FTarskiPlus, P::FPT, false},
      {P::FTarskiPlus, P::FTarski, false}, {P::TTarskiPlus, P::TTarski, false},
      {P::TTarski, P::MG1, false},       {P::MG1, P::TTarski, false},
      {P::TTarskiPlus, P::MG1Plus, false}, {P::MG1Plus, P::TTarskiPlus, false},
      {P::MG1Plus, P::MG1, false},       {P::G1Plus, P::G1, false},
      {P::FTarskiPlus, P::TTarskiPlus, true}, {P::TTarskiPlus, P::FTarskiPlus, true},
      {P::MG1, P::G1, true},             {P::G1, P::MG1, true},
      {P::MG1Plus, P::G1Plus, true},     {P::G1Plus, P::MG1Plus, true},
  };
  return arrows;
}

bool ImplicationReport::ok() const {
  return std::none_of(rows.begin(), rows.end(),
                      [](const auto& r) { return r.status == ImplicationRow::Status::Violated; });
}

nlohmann::json ImplicationReport::to_json() const {
  nlohmann::json j;
  j["tuple"] = tuple;
  j["arrows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    const char* s = r.status == ImplicationRow::Status::Consistent     ? "consistent"
                    : r.status == ImplicationRow::Status::Inconclusive ? "inconclusive"
                                                                        : "violated";
    j["arrows"].push_back({{"from", property_name(r.from)}, {"to", property_name(r.to)}, {"status", s}});
  }
  j["ok"] = ok();
  return j;
}

ImplicationReport implication_matrix(const std::map<PropertyId, Verdict>& verdicts, bool n_closed) {
  ImplicationReport report;
  for (auto p : all_properties()) {
    auto it = verdicts.find(p);
    if (it == verdicts.end()) continue;
    if (!report.tuple.empty()) report.tuple += ' ';
    report.tuple += property_label(p) + "=" + (it->second.holds ? "T" : "F");
  }
  for (auto arrow : implication_arrows()) {
    if (arrow.n_only && !n_closed) continue;
    auto from = verdicts.find(arrow.from);
    auto to = verdicts.find(arrow.to);
    if (from == verdicts.end() || to == verdicts.end()) continue;
    if (!from->second.holds || to->second.holds) arrow.status = ImplicationRow::Status::Consistent;
    else if (from->second.exact() && to->second.exact()) arrow.status = ImplicationRow::Status::Violated;
    else arrow.status = ImplicationRow::Status::Inconclusive;
    report.rows.push_back(arrow);
  }
  return report;
}

}  // namespace smullyan
