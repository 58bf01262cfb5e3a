#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "smullyan/arith/frame.hpp"
#include "smullyan/model.hpp"
#include "smullyan/properties.hpp"

namespace smullyan::arith {

struct UniverseEntry {
  std::string name;
  Formula formula;
  BigInt index;
  bool evaluable = false;
};

// A finite list of registered v-formula indices, used wherever strings over
// the frame alphabet are enumerated.
class IndexUniverse {
 public:
  IndexUniverse() = default;

  // Throws BadInput when f is not a v-formula.
  const UniverseEntry& add(std::string name, const Formula& f);
  const std::vector<UniverseEntry>& entries() const noexcept { return entries_; }
  const UniverseEntry* find(const BigInt& index) const;
  const UniverseEntry& by_name(const std::string& name) const;
  std::vector<Symbol> symbols() const;
  IndexUniverse first(std::size_t n) const;

  // [ "(sexpr)", ... ] or [ {"name": ..., "formula": "(sexpr)"}, ... ]
  static IndexUniverse from_json(const nlohmann::json& j);
  static IndexUniverse load(const std::string& path);
  // The bundled corpus of evaluable formulas.
  static IndexUniverse builtin();
  nlohmann::json to_json() const;

 private:
  std::vector<UniverseEntry> entries_;
};

// Evaluates phi at a handful of small and very large arguments within the
// default step budget.
bool probe_evaluable(const Formula& phi);

class DerivabilityOracle {
 public:
  virtual ~DerivabilityOracle() = default;
  virtual std::string name() const = 0;
  // f is closed.
  virtual bool judge(const Formula& f) const = 0;
};

// Truth in the naturals. Throws NotEvaluable past the evaluation budget.
class TrueInN final : public DerivabilityOracle {
 public:
  std::string name() const override { return "true-in-n"; }
  bool judge(const Formula& f) const override;
};

// Membership of the d-normal form among the d-normal forms of the members.
class FiniteTheory final : public DerivabilityOracle {
 public:
  explicit FiniteTheory(std::vector<Formula> members);
  std::string name() const override { return "finite-theory"; }
  bool judge(const Formula& f) const override;
  const std::vector<Formula>& members() const noexcept { return members_; }

 private:
  std::vector<Formula> members_;
  std::vector<BigInt> normal_codes_;  // sorted
};

// A JSON list of s-expression formulas.
std::vector<Formula> theory_from_json(const nlohmann::json& j);
std::vector<Formula> load_theory(const std::string& path);

std::shared_ptr<const DerivabilityOracle> make_oracle(const std::string& name, std::vector<Formula> theory = {});

// Phi(H) = { X : judge(J(HX)) } on a frame.
class ArithModel final : public SmullyanModel {
 public:
  // Over Fnr, judged by truth in the naturals. Throws NotEvaluable when a
  // registered index is not evaluable.
  static ArithModel model_n(const IndexUniverse& universe);
  // Over Fr. Checks judge(f) = judge(d_normalize(f)) on the J-images of all
  // sentences up to `sample_len` and throws OracleContractViolation otherwise.
  static ArithModel model_t(std::shared_ptr<const DerivabilityOracle> oracle, const IndexUniverse& universe,
                            std::size_t sample_len = 3);

  const std::string& name() const override { return name_; }
  Closure closure() const override { return frame_ == Frame::Fnr ? Closure::NR : Closure::R; }
  const Alphabet& alphabet() const override { return alphabet_; }
  std::vector<Symbol> enumeration_symbols() const override;

  bool is_predicate(const SmStr& x) const override { return frame_is_predicate(frame_, x); }
  bool phi_contains(const SmStr& h, const SmStr& x) const override;
  std::optional<SentenceParts> decompose(const SmStr& s) const override { return frame_decompose(frame_, s); }

  Frame frame() const noexcept { return frame_; }
  const DerivabilityOracle& oracle() const { return *oracle_; }
  const IndexUniverse& universe() const noexcept { return universe_; }
  bool judge(const Formula& f) const;

 private:
  ArithModel(Frame fr, std::shared_ptr<const DerivabilityOracle> oracle, IndexUniverse universe, std::string name);

  Frame frame_;
  std::shared_ptr<const DerivabilityOracle> oracle_;
  IndexUniverse universe_;
  Alphabet alphabet_;
  std::string name_;
};

// Every string of length 1..max_len over the model's enumeration symbols.
std::vector<SmStr> sample_strings(const ArithModel& m, std::size_t max_len);

struct LawReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

// Complement law (Fnr only) and repeat law on all predicates and strings up
// to the given lengths.
LawReport closure_laws(const ArithModel& m, std::size_t pred_len, std::size_t str_len);

// One self-referential construction and the two truth values it relates.
struct DiagonalReport {
  std::string construction;
  BigInt index;
  SmStr sentence;
  Formula theta = Formula::bot();
  BigInt code;
  Formula instance = Formula::bot();  // phi_i(code of theta)
  bool theta_value = false;
  bool instance_value = false;
  bool ok = false;
  nlohmann::json to_json() const;
};

// theta = J(r a_i r a_i) on Fnr; ok iff both sides evaluate alike.
DiagonalReport arith_fixed_point(const BigInt& i);
// psi = J(r n a_i r n a_i) on Fnr; ok iff the two sides differ.
DiagonalReport tarski_refuter(const BigInt& i);
// theta = J(r a_i r a_i) on Fr; ok iff the oracle judges both sides alike.
DiagonalReport weak_fixed_point(const DerivabilityOracle& oracle, const BigInt& i);

struct G1Report {
  Formula provability = Formula::bot();
  BigInt provability_index;
  SmStr sentence;
  Formula theta = Formula::bot();
  BigInt code;
  bool theta_true = false;
  bool theta_provable = false;
  bool negation_provable = false;
  bool ok() const { return theta_true && !theta_provable && !negation_provable; }
  nlohmann::json to_json() const;
};

// Throws UnsoundTheory when a member is false, BadInput when one is open.
G1Report g1_demo(const std::vector<Formula>& theory);
// The disjunction of v = code over the d-normal forms of the members.
Formula provability_formula(const std::vector<Formula>& theory);

struct TTReport {
  std::string clause1;  // "holds", "fails", "law-unvalidated", "not-requested"
  nlohmann::json clause1_detail = nlohmann::json::object();
  std::string clause2;  // "holds", "fails", "no-theorem"
  nlohmann::json clause2_detail = nlohmann::json::object();
  nlohmann::json to_json() const;
};

// Clause 1: with a candidate provability index, validate its law on the
// sampled J-images, then compare True+ with Phi(a_ipr) on Sent+ up to
// budget.str_len. Clause 2: every predicate up to budget.pred_len is told
// apart from True by a_t or r a_t for a theorem phi_t of the universe.
TTReport tt_checks(std::shared_ptr<const DerivabilityOracle> oracle, const IndexUniverse& universe, Budget budget,
                   std::optional<BigInt> provability_index = std::nullopt);

}  // namespace smullyan::arith
