// Runs the ten acceptance criteria and prints one PASS/FAIL line per
// criterion. Exit status is the number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "arith_oracles.hpp"
#include "smullyan/arith/eval.hpp"
#include "smullyan/arith/frame.hpp"
#include "smullyan/arith/models.hpp"
#include "smullyan/error.hpp"
#include "smullyan/gallery.hpp"
#include "unary_oracle.hpp"

using namespace smullyan;
using namespace smullyan::arith;

namespace {

// Pinned tolerances.
constexpr double kMatrixSeconds = 30.0;
constexpr double kConstructionSeconds = 1.0;
constexpr std::size_t kMaxCodeDigits = 1'000'000;
constexpr Budget kBudget{4, 12};
constexpr std::size_t kFixedPointPredLen = 6;
constexpr int kUnaryModels = 500;
constexpr int kUnarySpecs = 200;
constexpr std::size_t kMinCorpus = 20;
constexpr int kTheories = 10;
constexpr std::size_t kSentenceLen = 6;
constexpr int kRepeatPairs = 200;
constexpr int kCodecFormulas = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::vector<SmStr> strings_upto(const std::vector<Symbol>& syms, std::size_t max_len) {
  std::vector<SmStr> out, layer{SmStr{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<SmStr> next;
    for (const auto& s : layer)
      for (const auto& a : syms) next.push_back(s + SmStr{a});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Outcome gallery_matrix() {
  auto t0 = Clock::now();
  using P = PropertyId;
  auto m = verdict_matrix(kBudget, {P::FPT, P::TTarski, P::FTarski, P::TTarskiPlus, P::FTarskiPlus});
  double secs = seconds_since(t0);
  std::size_t cells = 0, mismatches = 0, contradictions = 0;
  for (const auto& row : m.rows)
    for (const auto& [p, c] : row.cells) {
      ++cells;
      mismatches += !c.matches;
      contradictions += c.certified_contradiction;
    }
  std::size_t witnessed = 0;
  for (const auto& s : m.separations) witnessed += s.witnessed;
  std::ostringstream os;
  os << m.rows.size() << " entries, " << cells << " cells, " << mismatches << " mismatches, " << contradictions
     << " certified contradictions, " << witnessed << "/" << m.separations.size() << " separations, " << secs << " s";
  return {m.ok() && mismatches == 0 && contradictions == 0 && secs < kMatrixSeconds, os.str()};
}

Outcome closed_forms() {
  std::size_t comparisons = 0, mismatches = 0;
  for (const auto& name : gallery_names()) {
    auto r = verify_closed_forms(gallery_entry(name), kBudget.pred_len, kBudget.str_len);
    comparisons += r.comparisons;
    mismatches += r.mismatches.size();
  }
  std::ostringstream os;
  os << gallery_names().size() << " entries, " << comparisons << " comparisons, " << mismatches << " mismatches";
  return {mismatches == 0 && comparisons > 0, os.str()};
}

Outcome fixed_points() {
  std::size_t models = 0, checked = 0, failed = 0;
  for (const auto& name : gallery_names()) {
    Model m = load(name);
    if (!has_r(m.closure())) continue;
    ++models;
    for (const auto& h : strings_upto(m.enumeration_symbols(), kFixedPointPredLen)) {
      if (!m.is_predicate(h)) continue;
      ++checked;
      try {
        auto cert = fixed_point(m, h);
        failed += cert.holds_sentence != cert.holds_prefixed;
      } catch (const Error&) {
        ++failed;
      }
    }
  }
  std::ostringstream os;
  os << models << " r-closed models, " << checked << " predicates, " << failed << " failures";
  return {failed == 0 && checked > 0, os.str()};
}

Outcome equivalences() {
  std::mt19937_64 rng(4);
  std::vector<EquivalenceSubject> unary;
  for (int i = 0; i < kUnaryModels; ++i) {
    auto s = oracle::random_unary(rng);
    unary.emplace_back(std::pair<std::string, EvPeriodicSet>("u" + std::to_string(i), EvPeriodicSet(s.prefix, s.cycle)));
  }
  auto ur = equivalence_suite(unary, kBudget);
  std::size_t unary_rows = 0, unary_agree = 0;
  for (const auto& row : ur.rows) {
    bool wanted = (row.left == PropertyId::FPT && row.right == PropertyId::FTarskiPlus) ||
                  (row.left == PropertyId::TTarski && row.right == PropertyId::MG1);
    if (!wanted) continue;
    ++unary_rows;
    unary_agree += row.status == EquivalenceRow::Status::Agree && row.left_verdict.exact() && row.right_verdict.exact();
  }

  std::vector<Model> models;
  for (const auto& name : gallery_names()) {
    Model m = load(name);
    if (has_n(m.closure())) models.push_back(std::move(m));
  }
  std::vector<EquivalenceSubject> gallery;
  for (const auto& m : models) gallery.emplace_back(&m);
  auto gr = equivalence_suite(gallery, kBudget);
  std::size_t g1_rows = 0, g1_agree = 0, plus_rows = 0, plus_certified = 0, plus_fail = 0;
  for (const auto& row : gr.rows) {
    if (row.left == PropertyId::MG1 && row.right == PropertyId::G1) {
      ++g1_rows;
      g1_agree += row.left_verdict.holds == row.right_verdict.holds;
    }
    if (row.left == PropertyId::FTarskiPlus && row.right == PropertyId::TTarskiPlus) {
      ++plus_rows;
      if (row.left_verdict.exact() && row.right_verdict.exact()) {
        ++plus_certified;
        plus_fail += row.left_verdict.holds != row.right_verdict.holds;
      }
    }
  }
  std::ostringstream os;
  os << "unary " << unary_agree << "/" << unary_rows << " exact agreements; n-closed gallery (" << models.size()
     << " models): mG1/G1 " << g1_agree << "/" << g1_rows << ", FT+/TT+ " << plus_certified - plus_fail << "/"
     << plus_certified << " certified pairs agree (" << plus_rows << " rows)";
  bool pass = unary_rows == 2 * kUnaryModels && unary_agree == unary_rows && g1_rows == models.size() &&
              g1_agree == g1_rows && plus_fail == 0 && !models.empty();
  return {pass, os.str()};
}

Outcome unary_decider() {
  using P = PropertyId;
  const std::vector<P> n_free{P::FPT, P::TTarski, P::FTarski, P::TTarskiPlus, P::FTarskiPlus, P::MG1, P::MG1Plus};
  std::mt19937_64 rng(8);
  std::size_t checked = 0, agree = 0;
  for (int i = 0; i < kUnarySpecs; ++i) {
    auto s = oracle::random_unary(rng);
    EvPeriodicSet phi(s.prefix, s.cycle);
    for (auto p : n_free) {
      ++checked;
      agree += decide_unary(phi, p).holds == oracle::unary_brute_force(s, p);
    }
  }
  std::ostringstream os;
  os << kUnarySpecs << " specs, " << agree << "/" << checked << " agree";
  return {agree == checked, os.str()};
}

Outcome diagonal_lemma() {
  auto u = IndexUniverse::builtin();
  std::size_t evaluable = 0, ok = 0, digits = 0;
  double slowest = 0;
  for (const auto& e : u.entries()) {
    if (!e.evaluable) continue;
    ++evaluable;
    auto t0 = Clock::now();
    auto r = arith_fixed_point(e.index);
    double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    std::size_t d = r.code.str().size();
    digits = std::max(digits, d);
    bool instance_ok = r.instance == subst(e.formula, kV, Term::num(oracle::ref_encode(r.theta)));
    ok += r.ok && r.theta_value == eval(r.theta) && r.instance_value == eval(r.instance) && instance_ok &&
          secs < kConstructionSeconds && d < kMaxCodeDigits;
  }
  std::ostringstream os;
  os << ok << "/" << evaluable << " corpus formulas agree, slowest " << slowest << " s, longest code " << digits
     << " digits";
  return {evaluable >= kMinCorpus && ok == evaluable, os.str()};
}

Outcome tarski() {
  auto u = IndexUniverse::builtin();
  std::size_t n = 0, ok = 0;
  for (const auto& e : u.entries()) {
    if (!e.evaluable) continue;
    ++n;
    auto r = tarski_refuter(e.index);
    ok += r.ok && eval(r.theta) != eval(subst(e.formula, kV, Term::num(oracle::ref_encode(r.theta))));
  }
  std::ostringstream os;
  os << ok << "/" << n << " candidates refuted";
  return {n >= kMinCorpus && ok == n, os.str()};
}

Outcome incompleteness() {
  std::mt19937_64 rng(31);
  oracle::FormulaGen gen{rng};
  int ok = 0;
  std::size_t members = 0;
  for (int k = 0; k < kTheories; ++k) {
    std::vector<Formula> theory;
    std::size_t size = 1 + rng() % 5;
    while (theory.size() < size) {
      Formula f = gen.closed(3);
      if (oracle::naive_eval(f)) theory.push_back(f);
    }
    members += theory.size();
    auto r = g1_demo(theory);
    std::set<BigInt> provable;
    for (const auto& m : theory) provable.insert(oracle::ref_encode(d_normalize(m)));
    bool unprovable = !provable.count(oracle::ref_encode(d_normalize(r.theta)));
    bool unrefutable = !provable.count(oracle::ref_encode(d_normalize(Formula::neg(r.theta))));
    ok += r.ok() && r.theta_true && oracle::naive_eval(r.theta) && unprovable && unrefutable;
  }
  std::ostringstream os;
  os << ok << "/" << kTheories << " theories (" << members << " members) leave a true sentence undecided";
  return {ok == kTheories, os.str()};
}

Outcome translation() {
  auto corpus = IndexUniverse::builtin();
  std::vector<Symbol> syms{Symbol::neg(), Symbol::rep()};
  std::vector<Symbol> indices;
  for (const char* name : {"always", "even", "outside-gamma", "diag-grows", "closed-true"})
    indices.push_back(Symbol::indexed(corpus.by_name(name).index));
  syms.insert(syms.end(), indices.begin(), indices.end());

  std::size_t preds = 0, sentences = 0, lemma = 0, bottoms = 0, failures = 0;
  for (const auto& s : strings_upto(syms, kSentenceLen)) {
    if (frame_is_predicate(Frame::Fnr, s)) {
      ++preds;
      failures += !(predicate_formula(Frame::Fnr, Symbol::neg() + s) == Formula::neg(predicate_formula(Frame::Fnr, s)));
    }
    auto parts = frame_decompose(Frame::Fnr, s);
    if (!parts) continue;
    ++sentences;
    Formula j = sentence_formula(Frame::Fnr, s);
    failures += !(sentence_formula(Frame::Fnr, Symbol::neg() + s) == Formula::neg(j));
    const SmStr& h = parts->head;
    const SmStr& x = parts->tail;
    bool x_pred = frame_is_predicate(Frame::Fnr, x);
    if (h.count(Symbol::rep()) == 0 && !x_pred && frame_decompose(Frame::Fnr, x)) {
      ++lemma;
      failures += !(j == subst(predicate_formula(Frame::Fnr, h), kV,
                               Term::num(oracle::ref_encode(sentence_formula(Frame::Fnr, x)))));
    }
    std::size_t k = 0;
    while (h[k] == Symbol::neg()) ++k;
    if (h[k] == Symbol::rep() && !x_pred) {
      ++bottoms;
      failures += !(j == negate_n(Formula::bot(), k));
    }
  }

  std::mt19937_64 rng(12);
  auto random_pred = [&](std::size_t max_prefix) {
    SmStr p;
    std::size_t len = rng() % (max_prefix + 1);
    for (std::size_t i = 0; i < len; ++i) p += rng() % 2 ? Symbol::rep() : Symbol::neg();
    p += indices[rng() % indices.size()];
    return p;
  };
  std::size_t pair_failures = 0;
  for (int k = 0; k < kRepeatPairs; ++k) {
    SmStr h = random_pred(3), kk = random_pred(3);
    Formula lhs = d_normalize(sentence_formula(Frame::Fnr, Symbol::rep() + h + kk));
    Formula rhs = d_normalize(sentence_formula(Frame::Fnr, h + kk + kk));
    pair_failures += !(lhs == rhs);
  }
  std::ostringstream os;
  os << sentences << " sentences and " << preds << " predicates up to length " << kSentenceLen << " (" << lemma
     << " r-free heads, " << bottoms << " r-headed non-predicate tails), " << failures << " failures; "
     << kRepeatPairs - pair_failures << "/" << kRepeatPairs << " repeat pairs agree after d-normalization";
  return {failures == 0 && pair_failures == 0 && lemma > 0 && bottoms > 0, os.str()};
}

Outcome codec() {
  struct Golden {
    const char* text;
    const char* code;
  };
  const Golden goldens[] = {
      {"(bot)", "272"},
      {"(eq v v)", "1173062950912"},
      {"(num 300)", "18973228"},
      {"(exists x1 (num 4) (eq (add x1 x1) (num 6)))", "86657167588911729302300598534"},
      {"(not (leq (d (num 7)) (mul x2 (num 128))))", "332540269453410878672175360"},
      {"(imp (or (bot) (bot)) (and (bot) (eq (num 0) (num 16384))))", "22031947782912804281767405125632"},
      {"(forall x200 v (eq x200 x200))", "86502609771572959125149090120"},
  };
  std::size_t golden_ok = 0;
  for (const auto& g : goldens) {
    std::string text = g.text;
    BigInt c = text.rfind("(num", 0) == 0 ? encode(parse_term(text)) : encode(parse_formula(text));
    golden_ok += c == BigInt(g.code);
  }

  std::mt19937_64 rng(2024);
  oracle::FormulaGen gen{rng};
  gen.big_numerals = true;
  gen.free_pool = {kV, 1, 7, 300};
  std::size_t round_trips = 0, reference = 0;
  std::set<BigInt> codes;
  std::set<std::string> distinct;
  for (int k = 0; k < kCodecFormulas; ++k) {
    Formula f = gen.open(4);
    BigInt c = encode(f);
    auto back = decode_formula(c);
    round_trips += back && *back == f && encode(*back) == c;
    reference += c == oracle::ref_encode(f);
    if (distinct.insert(to_sexpr(f)).second) codes.insert(c);
  }
  bool injective = codes.size() == distinct.size();
  std::ostringstream os;
  os << round_trips << "/" << kCodecFormulas << " round trips, " << reference << "/" << kCodecFormulas
     << " match the reference encoder, " << golden_ok << "/" << std::size(goldens) << " pinned codes, "
     << (injective ? "no collisions" : "COLLISION");
  return {round_trips == kCodecFormulas && reference == kCodecFormulas && golden_ok == std::size(goldens) && injective,
          os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gallery verdict matrix", gallery_matrix},
      {"closed-form agreement", closed_forms},
      {"fixed point certificates", fixed_points},
      {"equivalence suites", equivalences},
      {"unary decider vs brute force", unary_decider},
      {"arithmetic diagonal lemma", diagonal_lemma},
      {"truth-definition refuter", tarski},
      {"undecided sentence demo", incompleteness},
      {"translation identities", translation},
      {"codec conformance", codec},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %-30s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.summary.c_str());
    std::fflush(stdout);
  }
  return failed;
}
